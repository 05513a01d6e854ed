#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "ratvm/program.hpp"

namespace ratvm {

// Handle to a node inside one ThreadedProgram's arena. Reference identity
// (index equality) is the identity that matters: a forward jump and the
// fall-through path reach the *same* node, not equal copies.
struct NodeRef {
  std::uint32_t index = 0;
  bool operator==(const NodeRef&) const = default;
};

// One continuation node per instruction. Conditional jumps carry both
// branches; an unconditional jump carries only its target, so the node after
// it is reachable only through a label.
struct LoadN {
  Operand src;
  NodeRef next;
};
struct StoN {
  std::string name;
  NodeRef next;
};
struct AddN {
  Operand src;
  NodeRef next;
};
struct SubN {
  Operand src;
  NodeRef next;
};
struct JmpN {
  NodeRef cont;
};
struct JezN {
  NodeRef yes;
  NodeRef no;
};
struct JnezN {
  NodeRef yes;
  NodeRef no;
};
struct NopN {
  NodeRef next;
};
struct EndN {};

using Node = std::variant<LoadN, StoN, AddN, SubN, JmpN, JezN, JnezN, NopN, EndN>;

// Alternative indices of Node, used by the dispatch loop.
enum : std::size_t {
  kLoadN = 0,
  kStoN,
  kAddN,
  kSubN,
  kJmpN,
  kJezN,
  kJnezN,
  kNopN,
  kEndN,
};

// A program rewritten into a continuation graph. Node i mirrors instruction
// i and the extra last node is End, so |nodes| = |instructions| + 1. The
// graph may be cyclic (backward jumps) and nodes may be shared (forward
// jumps). Immutable once built; concurrent read-only runs are fine.
struct ThreadedProgram {
  std::vector<Node> nodes;
  NodeRef entry;
  std::map<std::string, NodeRef> label_table;

  const Node& node(NodeRef r) const { return nodes[r.index]; }
  NodeRef end_ref() const {
    return NodeRef{static_cast<std::uint32_t>(nodes.size() - 1)};
  }
};

// Threads a validated program. Two passes: the first allocates one slot per
// instruction (plus End) and records every label's slot, the second fills
// each slot with direct successor references. A jump to the node's own label
// or an earlier one therefore closes a reference cycle.
ThreadedProgram thread_program(const Program& p);

// Deterministic finite rendering of the (possibly cyclic) graph, starting at
// the entry node. Nodes reached more than once get a `#id:` anchor at their
// first visit and print as `@id` afterwards; ids are assigned in traversal
// preorder.
std::string dump_threaded(const ThreadedProgram& t);

} // namespace ratvm
