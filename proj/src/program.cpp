#include "ratvm/program.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ratvm {

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_ident_char(char c) {
  return is_lower(c) || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    s.remove_prefix(1);
  }
  if (s.empty()) {
    return false;
  }
  for (char c : s) {
    if (c < '0' || c > '9') {
      return false;
    }
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
    }
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
    }
    if (i > start) {
      out.push_back(s.substr(start, i - start));
    }
  }
  return out;
}

Value parse_integer(std::string_view tok) {
  // mpz_class rejects a leading '+'.
  if (!tok.empty() && tok[0] == '+') {
    tok.remove_prefix(1);
  }
  return Value(std::string(tok), 10);
}

struct LineParser {
  std::size_t line_no;
  std::vector<SourceError>& errors;

  void fail(std::string detail) {
    errors.push_back({SourceError::Kind::parse_error, line_no, std::move(detail)});
  }

  std::optional<Operand> operand(const std::vector<std::string_view>& toks,
                                 std::string_view mnemonic) {
    if (toks.size() < 2) {
      fail(std::string(mnemonic) + " needs an operand");
      return std::nullopt;
    }
    if (toks.size() > 2) {
      fail("trailing tokens after '" + std::string(toks[1]) + "'");
      return std::nullopt;
    }
    std::string_view tok = toks[1];
    if (is_integer_literal(tok)) {
      return Operand{Imm{parse_integer(tok)}};
    }
    if (is_identifier(tok)) {
      return Operand{MemRef{std::string(tok)}};
    }
    fail("operand '" + std::string(tok) + "' is neither a number nor an identifier");
    return std::nullopt;
  }

  std::optional<std::string> identifier_operand(const std::vector<std::string_view>& toks,
                                                std::string_view mnemonic,
                                                std::string_view what) {
    if (toks.size() < 2) {
      fail(std::string(mnemonic) + " needs a " + std::string(what));
      return std::nullopt;
    }
    if (toks.size() > 2) {
      fail("trailing tokens after '" + std::string(toks[1]) + "'");
      return std::nullopt;
    }
    if (!is_identifier(toks[1])) {
      fail(std::string(mnemonic) + " takes a " + std::string(what) +
           ", got '" + std::string(toks[1]) + "'");
      return std::nullopt;
    }
    return std::string(toks[1]);
  }

  std::optional<Instr> instruction(std::string_view text) {
    auto toks = split_tokens(text);
    if (toks.empty()) {
      fail("label without an instruction");
      return std::nullopt;
    }
    std::string_view m = toks[0];
    if (m == "load" || m == "add" || m == "sub") {
      auto op = operand(toks, m);
      if (!op) {
        return std::nullopt;
      }
      if (m == "load") {
        return Instr{Load{std::move(*op)}};
      }
      if (m == "add") {
        return Instr{Add{std::move(*op)}};
      }
      return Instr{Sub{std::move(*op)}};
    }
    if (m == "sto") {
      auto name = identifier_operand(toks, m, "memory name");
      return name ? std::optional<Instr>(Sto{std::move(*name)}) : std::nullopt;
    }
    if (m == "jmp" || m == "jez" || m == "jnez") {
      auto target = identifier_operand(toks, m, "code label");
      if (!target) {
        return std::nullopt;
      }
      if (m == "jmp") {
        return Instr{Jmp{std::move(*target)}};
      }
      if (m == "jez") {
        return Instr{Jez{std::move(*target)}};
      }
      return Instr{Jnez{std::move(*target)}};
    }
    if (m == "nop") {
      if (toks.size() > 1) {
        fail("nop takes no operand");
        return std::nullopt;
      }
      return Instr{Nop{}};
    }
    fail("unknown instruction '" + std::string(m) + "'");
    return std::nullopt;
  }
};

} // namespace

bool is_identifier(std::string_view s) {
  if (s.empty() || !is_lower(s[0])) {
    return false;
  }
  for (char c : s.substr(1)) {
    if (!is_ident_char(c)) {
      return false;
    }
  }
  return true;
}

ParseResult parse_program(std::string_view text) {
  ParseResult result;
  Program program;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos
                                                ? std::string_view::npos
                                                : eol - pos);
    if (eol == std::string_view::npos && raw.empty() && pos == text.size()) {
      break; // no trailing fragment after the last newline
    }
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (std::size_t semi = raw.find(';'); semi != std::string_view::npos) {
      raw = raw.substr(0, semi);
    }
    std::string_view line = trim(raw);
    if (line.empty()) {
      continue;
    }

    LineParser lp{line_no, result.errors};

    // Optional `label:` prefix: a leading identifier immediately followed
    // (modulo spaces) by a colon.
    std::optional<std::string> label;
    std::size_t i = 0;
    while (i < line.size() && is_ident_char(line[i])) {
      ++i;
    }
    std::size_t after_word = i;
    while (after_word < line.size() &&
           std::isspace(static_cast<unsigned char>(line[after_word]))) {
      ++after_word;
    }
    if (after_word < line.size() && line[after_word] == ':') {
      std::string_view word = line.substr(0, i);
      if (!is_identifier(word)) {
        lp.fail("label '" + std::string(word) + "' is not a valid identifier");
        continue;
      }
      label = std::string(word);
      line = line.substr(after_word + 1);
    }

    auto instr = lp.instruction(line);
    if (instr) {
      program.instrs.push_back({std::move(label), std::move(*instr), line_no});
    }
  }
  if (result.errors.empty()) {
    result.program = std::move(program);
  }
  return result;
}

std::vector<SourceError> validate(const Program& p) {
  std::vector<SourceError> errors;
  std::unordered_set<std::string> labels;
  for (const LabeledInstr& li : p.instrs) {
    if (li.label && !labels.insert(*li.label).second) {
      errors.push_back({SourceError::Kind::duplicate_label, li.line,
                        "duplicate label '" + *li.label + "'"});
    }
  }
  for (const LabeledInstr& li : p.instrs) {
    if (const std::string* target = jump_target(li.instr)) {
      if (!labels.contains(*target)) {
        errors.push_back({SourceError::Kind::undefined_target, li.line,
                          "jump to undefined label '" + *target + "'"});
      }
    }
  }
  return errors;
}

std::string format_program(const Program& p) {
  std::string out;
  for (const LabeledInstr& li : p.instrs) {
    if (li.label) {
      out += *li.label;
      out += ": ";
    }
    out += to_string(li.instr);
    out += '\n';
  }
  return out;
}

const std::string* jump_target(const Instr& ins) {
  switch (ins.index()) {
    case kJmp:
      return &std::get<Jmp>(ins).target;
    case kJez:
      return &std::get<Jez>(ins).target;
    case kJnez:
      return &std::get<Jnez>(ins).target;
    default:
      return nullptr;
  }
}

std::string to_string(const Operand& op) {
  if (const Imm* imm = std::get_if<Imm>(&op)) {
    return imm->value.get_str();
  }
  return std::get<MemRef>(op).name;
}

std::string to_string(const Instr& ins) {
  switch (ins.index()) {
    case kLoad:
      return "load " + to_string(std::get<Load>(ins).src);
    case kSto:
      return "sto " + std::get<Sto>(ins).name;
    case kAdd:
      return "add " + to_string(std::get<Add>(ins).src);
    case kSub:
      return "sub " + to_string(std::get<Sub>(ins).src);
    case kJmp:
      return "jmp " + std::get<Jmp>(ins).target;
    case kJez:
      return "jez " + std::get<Jez>(ins).target;
    case kJnez:
      return "jnez " + std::get<Jnez>(ins).target;
    default:
      return "nop";
  }
}

const char* to_string(SourceError::Kind kind) {
  switch (kind) {
    case SourceError::Kind::parse_error:
      return "parse error";
    case SourceError::Kind::duplicate_label:
      return "duplicate label";
    default:
      return "undefined target";
  }
}

std::string to_string(const SourceError& e) {
  std::ostringstream os;
  os << "line " << e.line << ": " << to_string(e.kind) << ": " << e.detail;
  return os.str();
}

} // namespace ratvm
