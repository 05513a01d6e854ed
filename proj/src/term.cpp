#include "ratvm/term.hpp"

#include <cassert>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace ratvm {

TermRef TermGraph::make_var(std::string name) {
  nodes_.push_back({true, std::move(name), {}});
  return TermRef{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

TermRef TermGraph::make_struct(std::string functor, std::vector<TermRef> args) {
  nodes_.push_back({false, std::move(functor), std::move(args)});
  return TermRef{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

void TermGraph::set_arg(TermRef s, std::size_t i, TermRef arg) {
  assert(!nodes_[s.index].is_var && i < nodes_[s.index].args.size());
  nodes_[s.index].args[i] = arg;
}

namespace {

// Visited set keyed by the unordered pair of node indices.
struct PairSet {
  std::unordered_set<std::uint64_t> seen;

  bool insert(TermRef a, TermRef b) {
    std::uint64_t lo = a.index, hi = b.index;
    if (lo > hi) {
      std::swap(lo, hi);
    }
    return seen.insert((lo << 32) | hi).second;
  }
};

using WorkList = std::vector<std::pair<TermRef, TermRef>>;

bool same_functor(const TermGraph& g, TermRef a, TermRef b) {
  return g.arity(a) == g.arity(b) && g.symbol(a) == g.symbol(b);
}

void push_args(const TermGraph& g, TermRef a, TermRef b, WorkList& work) {
  for (std::size_t i = g.arity(a); i-- > 0;) {
    work.emplace_back(g.arg(a, i), g.arg(b, i));
  }
}

} // namespace

bool occurs_check(const TermGraph& g, TermRef var, TermRef t,
                  const BindingStore& s) {
  const TermRef target = s.deref(g, var);
  std::vector<TermRef> stack{t};
  std::unordered_set<std::uint32_t> visited;
  while (!stack.empty()) {
    TermRef u = s.deref(g, stack.back());
    stack.pop_back();
    if (u == target) {
      return true;
    }
    if (g.is_var(u) || !visited.insert(u.index).second) {
      continue;
    }
    for (std::size_t i = 0; i < g.arity(u); ++i) {
      stack.push_back(g.arg(u, i));
    }
  }
  return false;
}

bool is_cyclic(const TermGraph& g, TermRef t, const BindingStore& s) {
  // Iterative three-color DFS over dereferenced structure nodes; a grey hit
  // means some node is reachable from its own argument position.
  enum : char { grey = 1, black = 2 };
  std::unordered_map<std::uint32_t, char> color;
  std::vector<std::pair<TermRef, std::size_t>> stack;

  TermRef root = s.deref(g, t);
  if (g.is_var(root)) {
    return false;
  }
  color[root.index] = grey;
  stack.emplace_back(root, 0);
  while (!stack.empty()) {
    auto& [u, next_arg] = stack.back();
    if (next_arg == g.arity(u)) {
      color[u.index] = black;
      stack.pop_back();
      continue;
    }
    TermRef c = s.deref(g, g.arg(u, next_arg++));
    if (g.is_var(c)) {
      continue;
    }
    auto it = color.find(c.index);
    if (it == color.end()) {
      color[c.index] = grey;
      stack.emplace_back(c, 0);
    } else if (it->second == grey) {
      return true;
    }
  }
  return false;
}

UnifyOutcome unify_herbrand(const TermGraph& g, TermRef t1, TermRef t2,
                            const BindingStore& in) {
  BindingStore s = in;
  // Herbrand terms are finite; a cyclic input is already outside the domain
  // and gets the same verdict the occurs check would eventually give.
  if (is_cyclic(g, t1, s) || is_cyclic(g, t2, s)) {
    return UnifyOutcome::failure(UnifyOutcome::Failure::occurs_violation);
  }
  WorkList work{{t1, t2}};
  PairSet seen;
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    a = s.deref(g, a);
    b = s.deref(g, b);
    if (a == b) {
      continue;
    }
    const bool va = g.is_var(a), vb = g.is_var(b);
    if (va && vb) {
      s.union_unbound(a, b);
      continue;
    }
    if (va || vb) {
      TermRef var = va ? a : b;
      TermRef term = va ? b : a;
      if (occurs_check(g, var, term, s)) {
        return UnifyOutcome::failure(UnifyOutcome::Failure::occurs_violation);
      }
      s.bind(var, term);
      continue;
    }
    if (!same_functor(g, a, b)) {
      return UnifyOutcome::failure(UnifyOutcome::Failure::clash);
    }
    if (!seen.insert(a, b)) {
      continue; // bindings only grow, so an already-handled pair stays unified
    }
    push_args(g, a, b, work);
  }
  return UnifyOutcome::success(std::move(s));
}

UnifyOutcome unify_rational(const TermGraph& g, TermRef t1, TermRef t2,
                            const BindingStore& in) {
  BindingStore s = in;
  WorkList work{{t1, t2}};
  PairSet seen;
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    a = s.deref(g, a);
    b = s.deref(g, b);
    if (a == b) {
      continue;
    }
    const bool va = g.is_var(a), vb = g.is_var(b);
    if (va && vb) {
      s.union_unbound(a, b);
      continue;
    }
    if (va) {
      s.bind(a, b); // no occurs check: X = f(...X...) is a rational tree
      continue;
    }
    if (vb) {
      s.bind(b, a);
      continue;
    }
    if (!same_functor(g, a, b)) {
      return UnifyOutcome::failure(UnifyOutcome::Failure::clash);
    }
    // The pair memo is the coinduction step: meeting (a, b) again means we
    // are already unifying them, so the walk must not descend twice.
    if (!seen.insert(a, b)) {
      continue;
    }
    push_args(g, a, b, work);
  }
  return UnifyOutcome::success(std::move(s));
}

bool equal_rational(const TermGraph& g, TermRef t1, TermRef t2,
                    const BindingStore& s) {
  WorkList work{{t1, t2}};
  PairSet seen;
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    a = s.deref(g, a);
    b = s.deref(g, b);
    if (a == b) {
      continue;
    }
    if (g.is_var(a) || g.is_var(b)) {
      return false; // an unbound variable only equals itself
    }
    if (!same_functor(g, a, b)) {
      return false;
    }
    if (!seen.insert(a, b)) {
      continue;
    }
    push_args(g, a, b, work);
  }
  return true;
}

namespace {

// Structure nodes reached more than once in a preorder walk; only these get
// anchors.
std::unordered_set<std::uint32_t> shared_nodes(const TermGraph& g, TermRef root,
                                               const BindingStore& s) {
  std::unordered_set<std::uint32_t> visited;
  std::unordered_set<std::uint32_t> shared;
  std::vector<TermRef> stack{root};
  while (!stack.empty()) {
    TermRef u = s.deref(g, stack.back());
    stack.pop_back();
    if (g.is_var(u)) {
      continue;
    }
    if (!visited.insert(u.index).second) {
      shared.insert(u.index);
      continue;
    }
    for (std::size_t i = g.arity(u); i-- > 0;) {
      stack.push_back(g.arg(u, i));
    }
  }
  return shared;
}

struct TermPrinter {
  const TermGraph& g;
  const BindingStore& s;
  const std::unordered_set<std::uint32_t> shared;
  std::unordered_map<std::uint32_t, int> ids; // assigned in print preorder
  std::string out;

  void print(TermRef t) {
    TermRef u = s.deref(g, t);
    if (g.is_var(u)) {
      out += g.symbol(u);
      return;
    }
    if (shared.contains(u.index)) {
      auto [it, fresh] = ids.emplace(u.index, static_cast<int>(ids.size()) + 1);
      if (!fresh) {
        out += '@';
        out += std::to_string(it->second);
        return;
      }
      out += '#';
      out += std::to_string(it->second);
      out += ':';
    }
    out += g.symbol(u);
    if (g.arity(u) > 0) {
      out += '(';
      for (std::size_t i = 0; i < g.arity(u); ++i) {
        if (i > 0) {
          out += ", ";
        }
        print(g.arg(u, i));
      }
      out += ')';
    }
  }
};

} // namespace

std::string print_term(const TermGraph& g, TermRef t, const BindingStore& s) {
  TermPrinter p{g, s, shared_nodes(g, t, s)};
  p.print(t);
  return std::move(p.out);
}

const char* to_string(UnifyOutcome::Failure f) {
  return f == UnifyOutcome::Failure::clash ? "clash" : "occurs-violation";
}

namespace {

struct EquationParser {
  TermGraph& g;
  std::string_view text;
  std::size_t pos = 0;
  std::unordered_map<std::string, TermRef> var_nodes;
  std::vector<std::pair<std::string, TermRef>> var_order;
  std::optional<SourceError> error;

  void fail(std::string detail) {
    if (!error) {
      error = SourceError{SourceError::Kind::parse_error, 1,
                          "column " + std::to_string(pos + 1) + ": " + detail};
    }
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }

  char peek() { return pos < text.size() ? text[pos] : '\0'; }

  bool ident_start_lower(char c) { return c >= 'a' && c <= 'z'; }
  bool ident_start_upper(char c) { return (c >= 'A' && c <= 'Z') || c == '_'; }
  bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  }

  std::string take_ident() {
    std::size_t start = pos;
    ++pos;
    while (pos < text.size() && ident_char(text[pos])) {
      ++pos;
    }
    return std::string(text.substr(start, pos - start));
  }

  TermRef term() {
    skip_ws();
    char c = peek();
    if (ident_start_upper(c)) {
      std::string name = take_ident();
      auto it = var_nodes.find(name);
      if (it != var_nodes.end()) {
        return it->second; // repeated names are the same variable
      }
      TermRef v = g.make_var(name);
      var_nodes.emplace(name, v);
      var_order.emplace_back(std::move(name), v);
      return v;
    }
    if (!ident_start_lower(c)) {
      fail(c == '\0' ? std::string("unexpected end of input")
                     : "unexpected character '" + std::string(1, c) + "'");
      return TermRef{};
    }
    std::string functor = take_ident();
    skip_ws();
    if (peek() != '(') {
      return g.make_atom(std::move(functor));
    }
    ++pos; // '('
    std::vector<TermRef> args;
    for (;;) {
      TermRef arg = term();
      if (!arg.valid()) {
        return TermRef{};
      }
      args.push_back(arg);
      skip_ws();
      if (peek() == ',') {
        ++pos;
        continue;
      }
      if (peek() == ')') {
        ++pos;
        break;
      }
      fail("expected ',' or ')'");
      return TermRef{};
    }
    return g.make_struct(std::move(functor), std::move(args));
  }

  ParsedEquation parse() {
    ParsedEquation eq;
    eq.lhs = term();
    if (eq.lhs.valid()) {
      skip_ws();
      if (peek() != '=') {
        fail("expected '='");
      } else {
        ++pos;
        eq.rhs = term();
        if (eq.rhs.valid()) {
          skip_ws();
          if (pos != text.size()) {
            fail("trailing input after equation");
          }
        }
      }
    }
    eq.variables = std::move(var_order);
    eq.error = std::move(error);
    return eq;
  }
};

} // namespace

ParsedEquation parse_term_equation(TermGraph& g, std::string_view text) {
  EquationParser p{g, text};
  return p.parse();
}

} // namespace ratvm
