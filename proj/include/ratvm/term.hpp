#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ratvm/source_error.hpp"

namespace ratvm {

// First-order terms as graphs: a node is a variable or a structure
// f(t1,...,tn), and structure arguments may point anywhere in the arena,
// including back at an ancestor. Cycles are how rational trees are
// represented finitely. Constants are structures of arity 0. Functor
// identity is (name, arity).
struct TermRef {
  static constexpr std::uint32_t kInvalid = 0xffffffff;

  std::uint32_t index = kInvalid;

  bool valid() const { return index != kInvalid; }
  bool operator==(const TermRef&) const = default;
};

class TermGraph {
public:
  TermRef make_var(std::string name);
  TermRef make_struct(std::string functor, std::vector<TermRef> args = {});
  TermRef make_atom(std::string functor) { return make_struct(std::move(functor)); }

  // Rewires one argument; the only way to close a cycle by hand.
  void set_arg(TermRef s, std::size_t i, TermRef arg);

  bool is_var(TermRef t) const { return nodes_[t.index].is_var; }
  // Variable name or functor name.
  const std::string& symbol(TermRef t) const { return nodes_[t.index].symbol; }
  std::size_t arity(TermRef t) const { return nodes_[t.index].args.size(); }
  TermRef arg(TermRef t, std::size_t i) const { return nodes_[t.index].args[i]; }

  std::size_t size() const { return nodes_.size(); }

private:
  struct NodeRec {
    bool is_var;
    std::string symbol;
    std::vector<TermRef> args;
  };
  std::vector<NodeRec> nodes_;
};

// Substitution in union-find form. Variables bind to representative terms or
// variables; variable-to-variable links are unioned by rank, which keeps
// every chain acyclic and dereference terminating even when structure
// arguments are cyclic. Cheap to copy, so unification can work on a copy and
// stay all-or-nothing.
class BindingStore {
public:
  // Follows variable bindings to the representative: an unbound variable or
  // a structure node.
  TermRef deref(const TermGraph& g, TermRef t) const {
    while (g.is_var(t)) {
      TermRef b = binding_for(t);
      if (!b.valid()) {
        break;
      }
      t = b;
    }
    return t;
  }

  bool is_bound(TermRef var) const { return binding_for(var).valid(); }

  // `var` must be a dereferenced unbound variable.
  void bind(TermRef var, TermRef target) {
    ensure(var.index);
    binding_[var.index] = target;
  }

  // Rank-based union of two dereferenced unbound variables; on equal rank
  // the second is bound to the first.
  void union_unbound(TermRef a, TermRef b) {
    ensure(std::max(a.index, b.index));
    if (rank_[a.index] < rank_[b.index]) {
      binding_[a.index] = b;
    } else {
      binding_[b.index] = a;
      if (rank_[a.index] == rank_[b.index]) {
        ++rank_[a.index];
      }
    }
  }

private:
  TermRef binding_for(TermRef var) const {
    return var.index < binding_.size() ? binding_[var.index] : TermRef{};
  }
  void ensure(std::size_t idx) {
    if (idx >= binding_.size()) {
      binding_.resize(idx + 1);
      rank_.resize(idx + 1, 0);
    }
  }

  std::vector<TermRef> binding_;
  std::vector<std::uint8_t> rank_;
};

struct UnifyOutcome {
  enum class Failure { clash, occurs_violation };

  std::optional<BindingStore> store; // engaged on success
  Failure reason = Failure::clash;   // meaningful only on failure

  bool ok() const { return store.has_value(); }

  static UnifyOutcome success(BindingStore s) {
    UnifyOutcome o;
    o.store = std::move(s);
    return o;
  }
  static UnifyOutcome failure(Failure f) {
    UnifyOutcome o;
    o.reason = f;
    return o;
  }
};

const char* to_string(UnifyOutcome::Failure f);

// Unification over finite (Herbrand) terms: before any variable is bound to
// a structure the occurs check runs, and cyclic *inputs* are rejected up
// front, both reported as OccursViolation. On success the store is a most
// general unifier in solved form. Quadratic occurs check by design.
UnifyOutcome unify_herbrand(const TermGraph& g, TermRef t1, TermRef t2,
                            const BindingStore& s);

// Unification over rational trees: no occurs check, inputs may already be
// cyclic, and a variable may end up bound to a term containing it. Repeated
// structure pairs are memoized (unordered pair of dereferenced nodes), which
// makes the walk terminate on every input. Never reports OccursViolation.
UnifyOutcome unify_rational(const TermGraph& g, TermRef t1, TermRef t2,
                            const BindingStore& s);

// True iff `var` is reachable in `t` under the current bindings. Safe on
// cyclic terms (carries a visited set).
bool occurs_check(const TermGraph& g, TermRef var, TermRef t,
                  const BindingStore& s);

// True iff some structure is reachable from its own argument position under
// the current bindings, i.e. the term denotes an infinite tree.
bool is_cyclic(const TermGraph& g, TermRef t, const BindingStore& s);

// Bisimulation equality: t1 and t2 denote the same (possibly infinite) tree.
// Two distinct unbound variables are never equal.
bool equal_rational(const TermGraph& g, TermRef t1, TermRef t2,
                    const BindingStore& s);

// Finite deterministic rendering under the store, with the same `#id:`/`@id`
// notation as dump_threaded. Tree-shaped terms print with no anchors.
std::string print_term(const TermGraph& g, TermRef t, const BindingStore& s);

// Parse of `lhs = rhs`. Variables match [A-Z_][A-Za-z0-9_]*, functors
// [a-z][A-Za-z0-9_]*, application is f(t1,...,tn) and repeated variable
// names denote the same variable.
struct ParsedEquation {
  TermRef lhs;
  TermRef rhs;
  // (name, node) in first-appearance order; handy for printing bindings.
  std::vector<std::pair<std::string, TermRef>> variables;
  std::optional<SourceError> error;

  bool ok() const { return !error.has_value(); }
};

ParsedEquation parse_term_equation(TermGraph& g, std::string_view text);

} // namespace ratvm
