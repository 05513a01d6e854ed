#include "ratvm/interp_threaded.hpp"

namespace ratvm {

namespace {

RuntimeError uninitialized(NodeRef at, const Operand& op) {
  return {RuntimeError::Kind::uninitialized_read, at.index,
          "read of unwritten cell '" + std::get<MemRef>(op).name + "'"};
}

} // namespace

RunResult run_threaded(const ThreadedProgram& t, Value acc,
                       std::optional<std::uint64_t> step_limit) {
  Memory mem;
  SharedValue a = std::make_shared<Value>(std::move(acc));
  std::uint64_t steps = 0;
  NodeRef cur = t.entry;

  for (;;) {
    const Node& nd = t.node(cur);
    if (nd.index() == kEndN) {
      // scan_comparisons is identically 0: control transfer is a reference
      // dereference, never a search.
      return MachineOutcome{*a, steps, 0};
    }
    if (step_limit && steps == *step_limit) {
      return RuntimeError{RuntimeError::Kind::step_limit_exceeded, cur.index,
                          "step limit reached"};
    }
    ++steps;
    switch (nd.index()) {
      case kLoadN: {
        const LoadN& node = std::get<LoadN>(nd);
        if (const Imm* imm = std::get_if<Imm>(&node.src)) {
          a = std::make_shared<Value>(imm->value);
        } else if (SharedValue cell =
                       mem.share(std::get<MemRef>(node.src).name)) {
          a = std::move(cell);
        } else {
          return uninitialized(cur, node.src);
        }
        cur = node.next;
        break;
      }
      case kStoN: {
        const StoN& node = std::get<StoN>(nd);
        mem.replace(node.name, a);
        cur = node.next;
        break;
      }
      case kAddN: {
        const AddN& node = std::get<AddN>(nd);
        const Value* v = eval_operand(node.src, mem);
        if (!v) {
          return uninitialized(cur, node.src);
        }
        a = value_add(*a, *v);
        cur = node.next;
        break;
      }
      case kSubN: {
        const SubN& node = std::get<SubN>(nd);
        const Value* v = eval_operand(node.src, mem);
        if (!v) {
          return uninitialized(cur, node.src);
        }
        a = value_sub(*a, *v);
        cur = node.next;
        break;
      }
      case kJmpN:
        cur = std::get<JmpN>(nd).cont;
        break;
      case kJezN: {
        const JezN& node = std::get<JezN>(nd);
        cur = sgn(*a) == 0 ? node.yes : node.no;
        break;
      }
      case kJnezN: {
        const JnezN& node = std::get<JnezN>(nd);
        cur = sgn(*a) != 0 ? node.yes : node.no;
        break;
      }
      default: // nop
        cur = std::get<NopN>(nd).next;
        break;
    }
  }
}

} // namespace ratvm
