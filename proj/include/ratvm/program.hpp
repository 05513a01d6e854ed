#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ratvm/source_error.hpp"
#include "ratvm/value.hpp"

namespace ratvm {

// An operand is either a literal number or the name of a memory cell.
// Which one is decided by the token's spelling, exactly as in the source
// language: digits make an immediate, an identifier names a cell.
struct Imm {
  Value value;
  bool operator==(const Imm&) const = default;
};

struct MemRef {
  std::string name;
  bool operator==(const MemRef&) const = default;
};

using Operand = std::variant<Imm, MemRef>;

struct Load {
  Operand src;
  bool operator==(const Load&) const = default;
};
struct Sto {
  std::string name; // always a memory name, never an immediate
  bool operator==(const Sto&) const = default;
};
struct Add {
  Operand src;
  bool operator==(const Add&) const = default;
};
struct Sub {
  Operand src;
  bool operator==(const Sub&) const = default;
};
struct Jmp {
  std::string target;
  bool operator==(const Jmp&) const = default;
};
struct Jez {
  std::string target;
  bool operator==(const Jez&) const = default;
};
struct Jnez {
  std::string target;
  bool operator==(const Jnez&) const = default;
};
struct Nop {
  bool operator==(const Nop&) const = default;
};

using Instr = std::variant<Load, Sto, Add, Sub, Jmp, Jez, Jnez, Nop>;

// Alternative indices of Instr, used by the dispatch loops.
enum : std::size_t {
  kLoad = 0,
  kSto,
  kAdd,
  kSub,
  kJmp,
  kJez,
  kJnez,
  kNop,
};

struct LabeledInstr {
  std::optional<std::string> label;
  Instr instr;
  std::size_t line = 0; // source line, 0 when built in memory

  // Identity is (label, instruction); the source line is diagnostics
  // metadata and takes no part in term equality.
  bool operator==(const LabeledInstr& o) const {
    return label == o.label && instr == o.instr;
  }
};

struct Program {
  std::vector<LabeledInstr> instrs;
  std::optional<std::string> name; // display only, not part of identity

  bool operator==(const Program& o) const { return instrs == o.instrs; }
};

struct ParseResult {
  std::optional<Program> program; // engaged iff errors is empty
  std::vector<SourceError> errors;

  bool ok() const { return errors.empty(); }
};

// Line-oriented concrete syntax: one instruction per line, an optional
// `label:` prefix, `;` starts a comment, blank lines are ignored.
// Malformed lines are collected, not thrown; parsing continues so a single
// pass reports every error in the file.
ParseResult parse_program(std::string_view text);

// Checks that code labels are unique and that every jump target is defined.
// Returns the empty vector when the program is well formed. Both engines
// require a validated program.
std::vector<SourceError> validate(const Program& p);

// Renders a program back to source text. Law: parse_program(format_program(p))
// yields a program term-equal to p.
std::string format_program(const Program& p);

// Identifiers (memory names and code labels): [a-z][a-zA-Z0-9_]*
bool is_identifier(std::string_view s);

// The jump target of jmp/jez/jnez, or nullptr for other instructions.
const std::string* jump_target(const Instr& ins);

std::string to_string(const Operand& op);
std::string to_string(const Instr& ins);

} // namespace ratvm
