#include "symta/transducer.hpp"

#include <stdexcept>

#include "product.hpp"

namespace symta {

Transducer::Transducer(std::shared_ptr<const Alphabet> alphabet,
                       std::shared_ptr<Manager> manager, std::string name)
    : TransitionStore(std::move(alphabet), std::move(manager), std::move(name)) {}

void Transducer::insert_rule(SymbolId input, const SuperState &source,
                             SymbolId output, const StateSet &targets) {
  const Symbol &f = alphabet().symbol(input);
  const Symbol &g = alphabet().symbol(output);
  if (f.arity != g.arity)
    throw std::invalid_argument("cannot relabel " + f.name + " of arity " +
                                std::to_string(f.arity) + " to " + g.name +
                                " of arity " + std::to_string(g.arity));
  if (f.arity != source.size())
    throw std::invalid_argument("symbol " + f.name + " has arity " +
                                std::to_string(f.arity) +
                                " but the source tuple has " +
                                std::to_string(source.size()) + " states");
  insert_rule_cube(alphabet().encode(input), source, alphabet().encode(output),
                   targets);
}

void Transducer::insert_rule_cube(const SymbolAssignment &input,
                                  const SuperState &source,
                                  const SymbolAssignment &output,
                                  const StateSet &targets) {
  check_source(source);
  if (targets.empty()) throw std::invalid_argument("empty target set");
  for (StateId q : targets) check_state(q);
  Manager &m = manager();
  NodeRef single = m.create_pair_mtbdd(Alphabet::interleave(input, output),
                                       m.intern_leaf(targets));
  auto overwrite = [](const StateSet &old, const StateSet &fresh) {
    return fresh.empty() ? old : fresh;
  };
  set_root(source, m.apply(root(source), single, overwrite));
}

StateSet Transducer::get_rule(SymbolId input, const SuperState &source,
                              SymbolId output) const {
  return manager().eval_pair(root(source), alphabet().encode_pair(input, output));
}

TreeAutomaton apply_step(const Transducer &t, const TreeAutomaton &a,
                         ProductOrigins *origins) {
  a.check_compatible(t);
  Manager &m = a.manager();
  detail::ProductExplorer explorer(a, t);
  explorer.run([&m](NodeRef lhs, NodeRef rhs, BinaryLeafOp intersect) {
    NodeRef both = m.apply(lhs, rhs, intersect);
    return m.rename_variables(m.trim_variables(both, Bank::X), Bank::Y, Bank::X);
  });

  TreeAutomaton out(a.alphabet_ptr(), a.manager_ptr(), "image");
  detail::add_numbered_states(out, explorer.pairs().size());
  for (StateId q = 0; q < explorer.pairs().size(); ++q) {
    const auto [qa, qt] = explorer.pairs()[q];
    if (a.is_final(qa) && t.is_final(qt)) out.set_final(q);
  }
  for (const auto &[source, root] : explorer.roots()) out.set_root(source, root);
  if (origins) *origins = explorer.pairs();
  return out;
}

Transducer compose(const Transducer &t1, const Transducer &t2,
                   ProductOrigins *origins) {
  t1.check_compatible(t2);
  Manager &m = t1.manager();
  detail::ProductExplorer explorer(t1, t2);
  explorer.run([&m](NodeRef first, NodeRef second, BinaryLeafOp intersect) {
    // second: x = intermediate, y = output. Shift to y = intermediate,
    // z = output so that it meets the output bank of `first`.
    NodeRef shifted = m.rename_variables(
        m.rename_variables(second, Bank::Y, Bank::Z), Bank::X, Bank::Y);
    NodeRef chained = m.apply(first, shifted, intersect);
    return m.rename_variables(m.trim_variables(chained, Bank::Y), Bank::Z,
                              Bank::Y);
  });

  Transducer out(t1.alphabet_ptr(), t1.manager_ptr(), "composition");
  detail::add_numbered_states(out, explorer.pairs().size());
  for (StateId q = 0; q < explorer.pairs().size(); ++q) {
    const auto [q1, q2] = explorer.pairs()[q];
    if (t1.is_final(q1) && t2.is_final(q2)) out.set_final(q);
  }
  for (const auto &[source, root] : explorer.roots()) out.set_root(source, root);
  if (origins) *origins = explorer.pairs();
  return out;
}

}  // namespace symta
