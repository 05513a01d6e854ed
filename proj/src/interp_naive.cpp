#include "ratvm/interp_naive.hpp"

#include <cassert>

namespace ratvm {

namespace {

// Resolves a jump the way the naive engine must: walk the program from its
// head until the instruction labeled `target` turns up. Every labeled
// instruction inspected on the way costs one comparison. validate() has
// already guaranteed the label exists and is unique.
std::size_t scan_for_label(const std::vector<LabeledInstr>& code,
                           const std::string& target, std::uint64_t& scans) {
  for (std::size_t j = 0;; ++j) {
    assert(j < code.size());
    if (code[j].label) {
      ++scans;
      if (*code[j].label == target) {
        return j;
      }
    }
  }
}

RuntimeError uninitialized(std::size_t at, const Operand& op) {
  return {RuntimeError::Kind::uninitialized_read, at,
          "read of unwritten cell '" + std::get<MemRef>(op).name + "'"};
}

} // namespace

RunResult run_naive(const Program& p, Value acc,
                    std::optional<std::uint64_t> step_limit) {
  const std::vector<LabeledInstr>& code = p.instrs;
  const std::size_t n = code.size();
  Memory mem;
  SharedValue a = std::make_shared<Value>(std::move(acc));
  std::uint64_t steps = 0;
  std::uint64_t scans = 0;
  std::size_t ip = 0;

  while (ip < n) {
    if (step_limit && steps == *step_limit) {
      return RuntimeError{RuntimeError::Kind::step_limit_exceeded, ip,
                          "step limit reached"};
    }
    const Instr& ins = code[ip].instr;
    ++steps;
    switch (ins.index()) {
      case kLoad: {
        const Operand& src = std::get<Load>(ins).src;
        if (const Imm* imm = std::get_if<Imm>(&src)) {
          a = std::make_shared<Value>(imm->value);
        } else if (SharedValue cell = mem.share(std::get<MemRef>(src).name)) {
          a = std::move(cell);
        } else {
          return uninitialized(ip, src);
        }
        ++ip;
        break;
      }
      case kSto:
        mem.replace(std::get<Sto>(ins).name, a);
        ++ip;
        break;
      case kAdd: {
        const Operand& src = std::get<Add>(ins).src;
        const Value* v = eval_operand(src, mem);
        if (!v) {
          return uninitialized(ip, src);
        }
        a = value_add(*a, *v);
        ++ip;
        break;
      }
      case kSub: {
        const Operand& src = std::get<Sub>(ins).src;
        const Value* v = eval_operand(src, mem);
        if (!v) {
          return uninitialized(ip, src);
        }
        a = value_sub(*a, *v);
        ++ip;
        break;
      }
      case kJmp:
        ip = scan_for_label(code, std::get<Jmp>(ins).target, scans);
        break;
      case kJez:
        if (sgn(*a) == 0) {
          ip = scan_for_label(code, std::get<Jez>(ins).target, scans);
        } else {
          ++ip;
        }
        break;
      case kJnez:
        if (sgn(*a) != 0) {
          ip = scan_for_label(code, std::get<Jnez>(ins).target, scans);
        } else {
          ++ip;
        }
        break;
      default: // nop
        ++ip;
        break;
    }
  }
  return MachineOutcome{*a, steps, scans};
}

const char* to_string(RuntimeError::Kind kind) {
  switch (kind) {
    case RuntimeError::Kind::uninitialized_read:
      return "uninitialized read";
    default:
      return "step limit exceeded";
  }
}

} // namespace ratvm
