#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include "ratvm/memory.hpp"
#include "ratvm/program.hpp"
#include "ratvm/value.hpp"

namespace ratvm {

// Result of a halted run. `scan_comparisons` counts label comparisons made
// while resolving jumps; the threaded engine never scans, so it reports 0.
struct MachineOutcome {
  Value acc_out;
  std::uint64_t steps = 0;
  std::uint64_t scan_comparisons = 0;
};

struct RuntimeError {
  enum class Kind { uninitialized_read, step_limit_exceeded };

  Kind kind = Kind::uninitialized_read;
  std::size_t at = 0; // instruction (equivalently, node) index
  std::string detail;
};

using RunResult = std::variant<MachineOutcome, RuntimeError>;

const char* to_string(RuntimeError::Kind kind);

// Operand evaluation, shared by both engines: immediates evaluate to
// themselves, memory operands to the stored cell. nullptr when the cell was
// never written.
inline const Value* eval_operand(const Operand& op, const Memory& mem) {
  if (const Imm* imm = std::get_if<Imm>(&op)) {
    return &imm->value;
  }
  return mem.get(std::get<MemRef>(op).name);
}

// Arithmetic on shared values. Results go straight into a fresh allocation
// (via the C entry points) so no intermediate temporary is materialized.
inline SharedValue value_add(const Value& a, const Value& b) {
  auto out = std::make_shared<Value>();
  mpz_add(out->get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline SharedValue value_sub(const Value& a, const Value& b) {
  auto out = std::make_shared<Value>();
  mpz_sub(out->get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

} // namespace ratvm
