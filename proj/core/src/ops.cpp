#include "symta/ops.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "product.hpp"

namespace symta {

using detail::add_numbered_states;

namespace {

const auto unite = [](const StateSet &lhs, const StateSet &rhs) {
  return set_union(lhs, rhs);
};

std::vector<std::pair<SuperState, NodeRef>> entries(const TransitionStore &a) {
  std::vector<std::pair<SuperState, NodeRef>> out;
  out.reserve(a.index().size());
  a.index().for_each(
      [&](const SuperState &s, NodeRef root) { out.emplace_back(s, root); });
  return out;
}

// Calls visit(tuple) for every tuple in choices[0] x ... x choices[n-1].
template <class Visit>
void for_each_tuple(const std::vector<std::vector<StateId>> &choices,
                    Visit &&visit) {
  for (const auto &c : choices)
    if (c.empty()) return;
  SuperState tuple(choices.size());
  std::vector<std::size_t> cursor(choices.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < tuple.size(); ++i) tuple[i] = choices[i][cursor[i]];
    visit(static_cast<const SuperState &>(tuple));
    std::size_t i = 0;
    for (; i < cursor.size(); ++i) {
      if (++cursor[i] < choices[i].size()) break;
      cursor[i] = 0;
    }
    if (i == cursor.size()) return;
  }
}

// Union of the roots of all stored tuples in sets[0] x ... x sets[n-1].
NodeRef union_over_product(const TransitionStore &a,
                           const std::vector<std::vector<StateId>> &sets) {
  Manager &m = a.manager();
  NodeRef acc = m.bottom();
  for_each_tuple(sets, [&](const SuperState &tuple) {
    NodeRef root = a.root(tuple);
    if (!m.is_bottom(root)) acc = m.apply(acc, root, unite);
  });
  return acc;
}

// Interning table for macrostates, discovery-ordered.
class MacrostateTable {
 public:
  StateId intern(const StateSet &set) {
    auto [it, inserted] = ids_.emplace(set, static_cast<StateId>(sets_.size()));
    if (inserted) {
      sets_.push_back(set);
      pending_.push_back(it->second);
    }
    return it->second;
  }
  const StateSet &set(StateId id) const { return sets_[id]; }
  std::size_t size() const noexcept { return sets_.size(); }
  bool has_pending() const noexcept { return !pending_.empty(); }
  StateId pop() {
    StateId id = pending_.front();
    pending_.pop_front();
    return id;
  }

 private:
  std::map<StateSet, StateId> ids_;
  std::vector<StateSet> sets_;
  std::deque<StateId> pending_;
};

// Bottom-up reachability. States are numbered in discovery order: leaves of
// a root are visited with 0-edges first, members of a leaf in ascending id,
// and the super-states unlocked by a state in lexicographic order of their
// new ids.
class Reachability {
 public:
  explicit Reachability(const TreeAutomaton &a)
      : a_(a), new_id_(a.state_count(), kUnseen), containing_(a.state_count()) {
    for (const auto &[source, root] : entries(a))
      if (!source.empty()) {
        SuperState unique = source;
        std::sort(unique.begin(), unique.end());
        unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
        for (StateId q : unique) containing_[q].push_back(source);
      }
  }

  // Explores until done or until `stop(old_id)` returns true for a newly
  // discovered state. Returns true iff stopped early.
  template <class Stop>
  bool run(Stop &&stop) {
    if (visit_root({}, stop)) return true;
    std::vector<bool> processed(a_.state_count(), false);
    for (std::size_t next = 0; next < order_.size(); ++next) {
      const StateId q = order_[next];
      processed[q] = true;
      std::vector<std::pair<SuperState, const SuperState *>> unlocked;
      for (const SuperState &source : containing_[q]) {
        bool ready = std::all_of(source.begin(), source.end(),
                                 [&](StateId p) { return processed[p]; });
        if (!ready) continue;
        SuperState renamed(source.size());
        for (std::size_t i = 0; i < source.size(); ++i)
          renamed[i] = new_id_[source[i]];
        unlocked.emplace_back(std::move(renamed), &source);
      }
      std::sort(unlocked.begin(), unlocked.end());
      for (const auto &[renamed, source] : unlocked)
        if (visit_root(*source, stop)) return true;
    }
    return false;
  }

  const std::vector<StateId> &order() const noexcept { return order_; }
  StateId new_id(StateId old) const { return new_id_[old]; }
  const std::vector<SuperState> &sources() const noexcept { return sources_; }

 private:
  static constexpr StateId kUnseen = static_cast<StateId>(-1);

  template <class Stop>
  bool visit_root(const SuperState &source, Stop &stop) {
    NodeRef root = a_.root(source);
    Manager &m = a_.manager();
    if (m.is_bottom(root)) return false;
    sources_.push_back(source);
    bool stopped = false;
    m.for_each_leaf(root, [&](LeafRef leaf) {
      if (stopped) return;
      for (StateId q : m.leaf_value(leaf)) {
        if (new_id_[q] != kUnseen) continue;
        new_id_[q] = static_cast<StateId>(order_.size());
        order_.push_back(q);
        if (stop(q)) {
          stopped = true;
          return;
        }
      }
    });
    return stopped;
  }

  const TreeAutomaton &a_;
  std::vector<StateId> new_id_;
  std::vector<StateId> order_;
  std::vector<std::vector<SuperState>> containing_;
  std::vector<SuperState> sources_;
};

}  // namespace

QuotientMap QuotientMap::from_classes(const std::vector<std::uint32_t> &labels,
                                      std::optional<std::uint32_t> sink_label) {
  QuotientMap q;
  std::map<std::uint32_t, std::uint32_t> renumber;
  q.class_of.reserve(labels.size());
  for (StateId s = 0; s < labels.size(); ++s) {
    auto [it, inserted] = renumber.emplace(
        labels[s], static_cast<std::uint32_t>(q.representative.size()));
    if (inserted) q.representative.push_back(s);
    q.class_of.push_back(it->second);
  }
  if (sink_label) {
    auto [it, inserted] = renumber.emplace(
        *sink_label, static_cast<std::uint32_t>(q.representative.size()));
    if (inserted) q.representative.push_back(static_cast<StateId>(labels.size()));
    q.sink_class = it->second;
  }
  return q;
}

QuotientMap QuotientMap::identity(std::size_t state_count) {
  std::vector<std::uint32_t> labels(state_count);
  for (std::size_t i = 0; i < state_count; ++i)
    labels[i] = static_cast<std::uint32_t>(i);
  return from_classes(labels);
}

std::vector<std::pair<StateId, StateId>> SimulationRelation::pairs() const {
  std::vector<std::pair<StateId, StateId>> out;
  for (StateId p = 0; p < size_; ++p)
    for (StateId r = 0; r < size_; ++r)
      if (contains(p, r)) out.emplace_back(p, r);
  return out;
}

TreeAutomaton union_of(const TreeAutomaton &a1, const TreeAutomaton &a2) {
  a1.check_compatible(a2);
  Manager &m = a1.manager();
  const auto offset = static_cast<StateId>(a1.state_count());
  auto shift = [offset](const StateSet &set) {
    StateSet out(set);
    for (StateId &q : out) q += offset;
    return out;
  };

  TreeAutomaton out(a1.alphabet_ptr(), a1.manager_ptr(), "union");
  add_numbered_states(out, a1.state_count() + a2.state_count());
  for (StateId q : a1.finals()) out.set_final(q);
  for (StateId q : a2.finals()) out.set_final(q + offset);

  for (const auto &[source, root] : entries(a1))
    if (!source.empty()) out.set_root(source, root);
  for (const auto &[source, root] : entries(a2)) {
    if (source.empty()) continue;
    SuperState shifted(source);
    for (StateId &q : shifted) q += offset;
    out.set_root(shifted, m.monadic_apply(root, shift));
  }
  auto merge = [&](const StateSet &lhs, const StateSet &rhs) {
    return set_union(lhs, shift(rhs));
  };
  out.set_root({}, m.apply(a1.root({}), a2.root({}), merge));
  return out;
}

TreeAutomaton intersection(const TreeAutomaton &a1, const TreeAutomaton &a2,
                           ProductOrigins *origins) {
  a1.check_compatible(a2);
  Manager &m = a1.manager();
  detail::ProductExplorer explorer(a1, a2);
  explorer.run([&m](NodeRef lhs, NodeRef rhs, BinaryLeafOp intersect) {
    return m.apply(lhs, rhs, intersect);
  });

  TreeAutomaton out(a1.alphabet_ptr(), a1.manager_ptr(), "intersection");
  add_numbered_states(out, explorer.pairs().size());
  for (StateId q = 0; q < explorer.pairs().size(); ++q) {
    const auto [p1, p2] = explorer.pairs()[q];
    if (a1.is_final(p1) && a2.is_final(p2)) out.set_final(q);
  }
  for (const auto &[source, root] : explorer.roots()) out.set_root(source, root);
  if (origins) *origins = explorer.pairs();
  return out;
}

TreeAutomaton determinise(const TreeAutomaton &a) {
  Manager &m = a.manager();
  MacrostateTable table;
  auto collect_sets = [&table](const StateSet &set) -> StateSet {
    if (set.empty()) return {};
    return {table.intern(set)};
  };

  std::vector<std::pair<SuperState, NodeRef>> roots;
  if (NodeRef init = a.root({}); !m.is_bottom(init))
    roots.emplace_back(SuperState{}, m.monadic_apply(init, collect_sets));

  std::map<std::size_t, std::vector<SuperState>> sources;
  for (std::size_t n : a.index().arities())
    if (n > 0) sources.emplace(n, a.super_states(n));

  std::vector<StateId> processed;
  while (table.has_pending()) {
    const StateId fresh = table.pop();
    processed.push_back(fresh);
    for (const auto &[n, stored] : sources) {
      // Macrostate tuples containing `fresh` that cover some stored tuple.
      std::set<SuperState> candidates;
      for (const SuperState &q : stored) {
        for (std::size_t i = 0; i < n; ++i) {
          if (!set_contains(table.set(fresh), q[i])) continue;
          std::vector<std::vector<StateId>> choices(n);
          for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
              choices[j] = {fresh};
              continue;
            }
            for (StateId s : processed)
              if (set_contains(table.set(s), q[j])) choices[j].push_back(s);
          }
          for_each_tuple(choices,
                         [&](const SuperState &t) { candidates.insert(t); });
        }
      }
      for (const SuperState &macro : candidates) {
        std::vector<std::vector<StateId>> members(n);
        for (std::size_t j = 0; j < n; ++j) members[j] = table.set(macro[j]);
        NodeRef tmp = union_over_product(a, members);
        if (m.is_bottom(tmp)) continue;
        roots.emplace_back(macro, m.monadic_apply(tmp, collect_sets));
      }
    }
  }

  TreeAutomaton out(a.alphabet_ptr(), a.manager_ptr(), "determinised");
  add_numbered_states(out, table.size());
  for (StateId s = 0; s < table.size(); ++s)
    for (StateId q : table.set(s))
      if (a.is_final(q)) {
        out.set_final(s);
        break;
      }
  for (const auto &[source, root] : roots) out.set_root(source, root);
  return out;
}

TreeAutomaton complement(const TreeAutomaton &a) {
  TreeAutomaton det = determinise(a);
  Manager &m = a.manager();
  const Alphabet &alphabet = a.alphabet();
  const auto sink = static_cast<StateId>(det.state_count());

  TreeAutomaton out(a.alphabet_ptr(), a.manager_ptr(), "complement");
  add_numbered_states(out, det.state_count() + 1);
  for (StateId q = 0; q <= sink; ++q)
    if (q == sink || !det.is_final(q)) out.set_final(q);
  for (const auto &[source, root] : entries(det)) out.set_root(source, root);

  std::set<unsigned> arities;
  for (const Symbol &s : alphabet.symbols()) arities.insert(s.arity);
  const LeafRef to_sink = m.intern_leaf({sink});
  auto fill = [](const StateSet &stored, const StateSet &missing) {
    return stored.empty() ? missing : stored;
  };
  std::vector<StateId> all(sink + 1);
  for (StateId q = 0; q <= sink; ++q) all[q] = q;

  for (unsigned n : arities) {
    NodeRef mask = m.bottom();
    for (SymbolId f : alphabet.symbols_of_arity(n))
      mask = m.apply(mask, m.create_mtbdd(alphabet.encode(f), to_sink), unite);
    for_each_tuple(std::vector<std::vector<StateId>>(n, all),
                   [&](const SuperState &t) {
                     out.set_root(t, m.apply(out.root(t), mask, fill));
                   });
  }
  return out;
}

TreeAutomaton prune_unreachable(const TreeAutomaton &a) {
  Reachability reach(a);
  reach.run([](StateId) { return false; });
  Manager &m = a.manager();

  TreeAutomaton out(a.alphabet_ptr(), a.manager_ptr(), "pruned");
  add_numbered_states(out, reach.order().size());
  for (StateId q = 0; q < reach.order().size(); ++q)
    if (a.is_final(reach.order()[q])) out.set_final(q);
  auto rename = [&reach](const StateSet &set) {
    StateSet renamed;
    renamed.reserve(set.size());
    for (StateId q : set) renamed.push_back(reach.new_id(q));
    return make_state_set(std::move(renamed));
  };
  for (const SuperState &source : reach.sources()) {
    SuperState renamed(source.size());
    for (std::size_t i = 0; i < source.size(); ++i)
      renamed[i] = reach.new_id(source[i]);
    out.set_root(renamed, m.monadic_apply(a.root(source), rename));
  }
  return out;
}

bool is_empty(const TreeAutomaton &a) {
  Reachability reach(a);
  return !reach.run([&a](StateId q) { return a.is_final(q); });
}

TreeAutomaton reduce_by_equivalence(const TreeAutomaton &a,
                                    const QuotientMap &quotient) {
  if (quotient.class_of.size() != a.state_count())
    throw std::invalid_argument("quotient does not cover every state");
  for (std::uint32_t c : quotient.class_of)
    if (c >= quotient.class_count())
      throw std::invalid_argument("quotient refers to an unknown class");

  // Kept classes are renumbered contiguously after dropping the sink class.
  constexpr std::uint32_t kDropped = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> kept(quotient.class_count());
  std::uint32_t count = 0;
  for (std::uint32_t c = 0; c < quotient.class_count(); ++c)
    kept[c] = quotient.sink_class == c ? kDropped : count++;
  auto target = [&](StateId q) { return kept[quotient.class_of[q]]; };

  Manager &m = a.manager();
  TreeAutomaton out(a.alphabet_ptr(), a.manager_ptr(), "reduced");
  add_numbered_states(out, count);
  for (StateId q : a.finals())
    if (target(q) != kDropped) out.set_final(target(q));

  auto merge = [&](const StateSet &acc, const StateSet &leaf) {
    StateSet mapped;
    mapped.reserve(leaf.size());
    for (StateId q : leaf)
      if (target(q) != kDropped) mapped.push_back(target(q));
    return set_union(acc, make_state_set(std::move(mapped)));
  };
  for (const auto &[source, root] : entries(a)) {
    SuperState mapped(source.size());
    bool dropped = false;
    for (std::size_t i = 0; i < source.size() && !dropped; ++i) {
      mapped[i] = target(source[i]);
      dropped = mapped[i] == kDropped;
    }
    if (dropped) continue;
    out.set_root(mapped, m.apply(out.root(mapped), root, merge));
  }
  return out;
}

QuotientMap compute_congruence(const TreeAutomaton &a) {
  Manager &m = a.manager();
  const auto stored = entries(a);
  for (const auto &[source, root] : stored)
    m.for_each_leaf(root, [&](LeafRef leaf) {
      if (m.leaf_value(leaf).size() > 1)
        throw std::invalid_argument(
            "congruence requires a deterministic automaton");
    });

  // Index n stands for the sink.
  const auto n = static_cast<StateId>(a.state_count());
  std::vector<std::uint32_t> cls(n + 1);
  for (StateId q = 0; q < n; ++q) cls[q] = a.is_final(q) ? 1 : 0;
  cls[n] = 0;
  std::size_t class_count = 0;
  {
    std::set<std::uint32_t> distinct(cls.begin(), cls.end());
    class_count = distinct.size();
  }

  while (true) {
    std::set<std::pair<StateId, StateId>> split;
    bool differs = false;
    auto refine_eq = [&](const StateSet &lhs, const StateSet &rhs) {
      const std::uint32_t cl = lhs.empty() ? cls[n] : cls[lhs.front()];
      const std::uint32_t cr = rhs.empty() ? cls[n] : cls[rhs.front()];
      if (cl != cr) differs = true;
      return StateSet{};
    };
    for (const auto &[source, root] : stored) {
      for (std::size_t i = 0; i < source.size(); ++i) {
        const StateId q = source[i];
        for (StateId r = 0; r <= n; ++r) {
          if (r == q || cls[r] != cls[q]) continue;
          auto key = std::minmax(q, r);
          if (split.count(key)) continue;
          NodeRef other = m.bottom();
          if (r != n) {
            SuperState sibling = source;
            sibling[i] = r;
            other = a.root(sibling);
          }
          if (other == root) continue;
          differs = false;
          m.apply(root, other, refine_eq);
          if (differs) split.insert(key);
        }
      }
    }

    // Within each old class, states not split apart form one new class.
    std::vector<std::uint32_t> next(n + 1);
    std::vector<StateId> leaders;
    for (StateId q = 0; q <= n; ++q) {
      bool placed = false;
      for (std::size_t c = 0; c < leaders.size() && !placed; ++c) {
        const StateId l = leaders[c];
        if (cls[l] == cls[q] && !split.count(std::minmax(l, q))) {
          next[q] = static_cast<std::uint32_t>(c);
          placed = true;
        }
      }
      if (!placed) {
        next[q] = static_cast<std::uint32_t>(leaders.size());
        leaders.push_back(q);
      }
    }
    cls = std::move(next);
    if (leaders.size() == class_count) break;
    class_count = leaders.size();
  }

  std::vector<std::uint32_t> labels(cls.begin(), cls.end() - 1);
  return QuotientMap::from_classes(labels, cls[n]);
}

TreeAutomaton minimise(const TreeAutomaton &a) {
  TreeAutomaton det = determinise(prune_unreachable(a));
  TreeAutomaton result =
      prune_unreachable(reduce_by_equivalence(det, compute_congruence(det)));
  result.set_name("minimised");
  return result;
}

SimulationRelation downward_simulation(const TreeAutomaton &a) {
  Manager &m = a.manager();
  const std::size_t n = a.state_count();
  SimulationRelation sim(n, true);
  const auto stored = entries(a);

  bool changed = true;
  auto refine = [&](const StateSet &lower_targets, const StateSet &upper_targets) {
    for (StateId q : lower_targets)
      for (StateId r = 0; r < n; ++r)
        if (sim.contains(q, r) && !set_contains(upper_targets, r)) {
          sim.set(q, r, false);
          changed = true;
        }
    return StateSet{};
  };
  while (changed) {
    changed = false;
    for (const auto &[source, root] : stored) {
      NodeRef tmp = m.bottom();
      for (const auto &[other, other_root] : stored) {
        if (other.size() != source.size()) continue;
        bool dominated = true;
        for (std::size_t i = 0; i < source.size() && dominated; ++i)
          dominated = sim.contains(source[i], other[i]);
        if (dominated) tmp = m.apply(tmp, other_root, unite);
      }
      m.apply(root, tmp, refine);
    }
  }
  return sim;
}

TreeAutomaton reduce_by_simulation(const TreeAutomaton &a) {
  const SimulationRelation sim = downward_simulation(a);
  std::vector<std::uint32_t> labels(a.state_count());
  for (StateId q = 0; q < a.state_count(); ++q) {
    StateId least = q;
    for (StateId r = 0; r < q; ++r)
      if (sim.contains(q, r) && sim.contains(r, q)) {
        least = r;
        break;
      }
    labels[q] = least;
  }
  TreeAutomaton result =
      reduce_by_equivalence(a, QuotientMap::from_classes(labels));
  result.set_name("simulation_reduced");
  return result;
}

bool check_inclusion_antichain(const TreeAutomaton &a1, const TreeAutomaton &a2,
                               const AntichainObserver &observer) {
  a1.check_compatible(a2);
  Manager &m = a1.manager();

  struct Entry {
    StateId state;
    StateSet partners;
    bool alive = true;
    bool processed = false;
  };
  std::vector<Entry> antichain;
  std::vector<std::vector<std::size_t>> by_state(a1.state_count());
  std::deque<std::size_t> queue;

  auto snapshot = [&] {
    std::vector<ProductPair> out;
    for (const Entry &e : antichain)
      if (e.alive) out.emplace_back(e.state, e.partners);
    return out;
  };
  auto insert = [&](StateId p, const StateSet &partners) {
    for (std::size_t idx : by_state[p])
      if (antichain[idx].alive && is_subset(antichain[idx].partners, partners))
        return;
    for (std::size_t idx : by_state[p])
      if (antichain[idx].alive && is_subset(partners, antichain[idx].partners))
        antichain[idx].alive = false;
    by_state[p].push_back(antichain.size());
    queue.push_back(antichain.size());
    antichain.push_back(Entry{p, partners});
    if (observer) observer(snapshot());
  };

  std::vector<ProductPair> found;
  auto collect_products = [&found](const StateSet &lhs, const StateSet &rhs) {
    for (StateId p : lhs) found.emplace_back(p, rhs);
    return StateSet{};
  };
  auto flush = [&] {
    for (const auto &[p, partners] : found) insert(p, partners);
    found.clear();
  };

  std::vector<std::vector<SuperState>> containing(a1.state_count());
  for (const auto &[source, root] : entries(a1)) {
    SuperState unique = source;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (StateId q : unique) containing[q].push_back(source);
  }
  const StateSet finals2 = a2.finals();

  m.apply(a1.root({}), a2.root({}), collect_products);
  flush();

  while (!queue.empty()) {
    const std::size_t current = queue.front();
    queue.pop_front();
    if (!antichain[current].alive) continue;
    const StateId p = antichain[current].state;
    if (a1.is_final(p) &&
        set_intersection(antichain[current].partners, finals2).empty())
      return false;
    antichain[current].processed = true;

    for (const SuperState &source : containing[p]) {
      const std::size_t n = source.size();
      std::set<std::vector<std::uint32_t>> combos;
      for (std::size_t i = 0; i < n; ++i) {
        if (source[i] != p) continue;
        std::vector<std::vector<StateId>> choices(n);
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) {
            choices[j] = {static_cast<StateId>(current)};
            continue;
          }
          for (std::size_t idx : by_state[source[j]])
            if (antichain[idx].alive && antichain[idx].processed)
              choices[j].push_back(static_cast<StateId>(idx));
        }
        for_each_tuple(choices, [&](const SuperState &c) { combos.insert(c); });
      }
      for (const auto &combo : combos) {
        std::vector<std::vector<StateId>> partner_sets(n);
        for (std::size_t j = 0; j < n; ++j)
          partner_sets[j] = antichain[combo[j]].partners;
        NodeRef tmp = union_over_product(a2, partner_sets);
        m.apply(a1.root(source), tmp, collect_products);
        flush();
      }
    }
  }
  return true;
}

bool check_inclusion_classical(const TreeAutomaton &a1,
                               const TreeAutomaton &a2) {
  a1.check_compatible(a2);
  return is_empty(intersection(a1, complement(a2)));
}

}  // namespace symta
