#include "ratvm/threaded.hpp"

#include <cassert>

#include "ratvm/term.hpp"

namespace ratvm {

ThreadedProgram thread_program(const Program& p) {
  assert(validate(p).empty());
  const std::size_t n = p.instrs.size();
  ThreadedProgram t;
  t.nodes.resize(n + 1, Node{EndN{}});
  t.entry = NodeRef{0};

  // Pass 1: one slot per instruction plus End; labels point at their slot.
  // This stands in for the logic variables the one-pass original let the
  // label table hand out before the target was threaded.
  for (std::size_t i = 0; i < n; ++i) {
    if (p.instrs[i].label) {
      t.label_table.emplace(*p.instrs[i].label,
                            NodeRef{static_cast<std::uint32_t>(i)});
    }
  }

  // Pass 2: fill every slot with direct successor references. A backward
  // (or self) jump target already has its slot, so the reference closes a
  // cycle; a forward jump shares the very node the fall-through path reaches.
  for (std::size_t i = 0; i < n; ++i) {
    const Instr& ins = p.instrs[i].instr;
    const NodeRef next{static_cast<std::uint32_t>(i + 1)};
    switch (ins.index()) {
      case kLoad:
        t.nodes[i] = LoadN{std::get<Load>(ins).src, next};
        break;
      case kSto:
        t.nodes[i] = StoN{std::get<Sto>(ins).name, next};
        break;
      case kAdd:
        t.nodes[i] = AddN{std::get<Add>(ins).src, next};
        break;
      case kSub:
        t.nodes[i] = SubN{std::get<Sub>(ins).src, next};
        break;
      case kJmp:
        // No fall-through reference: the following node stays reachable
        // only via its label, if it has one.
        t.nodes[i] = JmpN{t.label_table.at(std::get<Jmp>(ins).target)};
        break;
      case kJez:
        t.nodes[i] = JezN{t.label_table.at(std::get<Jez>(ins).target), next};
        break;
      case kJnez:
        t.nodes[i] = JnezN{t.label_table.at(std::get<Jnez>(ins).target), next};
        break;
      default:
        t.nodes[i] = NopN{next};
        break;
    }
  }
  return t;
}

namespace {

TermRef operand_atom(TermGraph& g, const Operand& op) {
  return g.make_atom(to_string(op));
}

// Mirrors the node arena into a term graph, one struct per node, preserving
// sharing and cycles, so dump_threaded and print_term render identically.
TermRef to_term_graph(const ThreadedProgram& t, TermGraph& g) {
  std::vector<TermRef> refs(t.nodes.size());
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const Node& nd = t.nodes[i];
    switch (nd.index()) {
      case kLoadN:
        refs[i] = g.make_struct("load", {operand_atom(g, std::get<LoadN>(nd).src), {}});
        break;
      case kStoN:
        refs[i] = g.make_struct("sto", {g.make_atom(std::get<StoN>(nd).name), {}});
        break;
      case kAddN:
        refs[i] = g.make_struct("add", {operand_atom(g, std::get<AddN>(nd).src), {}});
        break;
      case kSubN:
        refs[i] = g.make_struct("sub", {operand_atom(g, std::get<SubN>(nd).src), {}});
        break;
      case kJmpN:
        refs[i] = g.make_struct("jmp", {TermRef{}});
        break;
      case kJezN:
        refs[i] = g.make_struct("jez", {TermRef{}, TermRef{}});
        break;
      case kJnezN:
        refs[i] = g.make_struct("jnez", {TermRef{}, TermRef{}});
        break;
      case kNopN:
        refs[i] = g.make_struct("nop", {TermRef{}});
        break;
      default:
        refs[i] = g.make_atom("end");
        break;
    }
  }
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const Node& nd = t.nodes[i];
    switch (nd.index()) {
      case kLoadN:
        g.set_arg(refs[i], 1, refs[std::get<LoadN>(nd).next.index]);
        break;
      case kStoN:
        g.set_arg(refs[i], 1, refs[std::get<StoN>(nd).next.index]);
        break;
      case kAddN:
        g.set_arg(refs[i], 1, refs[std::get<AddN>(nd).next.index]);
        break;
      case kSubN:
        g.set_arg(refs[i], 1, refs[std::get<SubN>(nd).next.index]);
        break;
      case kJmpN:
        g.set_arg(refs[i], 0, refs[std::get<JmpN>(nd).cont.index]);
        break;
      case kJezN:
        g.set_arg(refs[i], 0, refs[std::get<JezN>(nd).yes.index]);
        g.set_arg(refs[i], 1, refs[std::get<JezN>(nd).no.index]);
        break;
      case kJnezN:
        g.set_arg(refs[i], 0, refs[std::get<JnezN>(nd).yes.index]);
        g.set_arg(refs[i], 1, refs[std::get<JnezN>(nd).no.index]);
        break;
      case kNopN:
        g.set_arg(refs[i], 0, refs[std::get<NopN>(nd).next.index]);
        break;
      default:
        break;
    }
  }
  return refs[t.entry.index];
}

} // namespace

std::string dump_threaded(const ThreadedProgram& t) {
  TermGraph g;
  TermRef root = to_term_graph(t, g);
  return print_term(g, root, BindingStore{});
}

} // namespace ratvm
