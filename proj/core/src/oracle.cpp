#include "symta/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "symta/io.hpp"

namespace symta {

namespace {

// Calls visit(tuple) for every tuple over `domain` of length n.
template <class Visit>
void for_each_tuple(std::size_t domain, std::size_t n, Visit &&visit) {
  if (domain == 0 && n > 0) return;
  SuperState tuple(n, 0);
  while (true) {
    visit(static_cast<const SuperState &>(tuple));
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++tuple[i] < domain) break;
      tuple[i] = 0;
    }
    if (i == n) return;
  }
}

// Calls visit(tuple) for each tuple in sets[0] x ... x sets[n-1].
template <class Visit>
void for_each_choice(const std::vector<StateSet> &sets, Visit &&visit) {
  for (const StateSet &s : sets)
    if (s.empty()) return;
  SuperState tuple(sets.size());
  std::vector<std::size_t> cursor(sets.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < sets.size(); ++i) tuple[i] = sets[i][cursor[i]];
    visit(static_cast<const SuperState &>(tuple));
    std::size_t i = 0;
    for (; i < sets.size(); ++i) {
      if (++cursor[i] < sets[i].size()) break;
      cursor[i] = 0;
    }
    if (i == sets.size()) return;
  }
}

void require_small(const ExplicitTA &x, const char *what) {
  if (x.state_count > kOracleStateLimit)
    throw std::invalid_argument(std::string(what) + ": operand has " +
                                std::to_string(x.state_count) +
                                " states, the oracle accepts at most " +
                                std::to_string(kOracleStateLimit));
}

SymbolAssignment half(const SymbolAssignment &pair, std::size_t offset) {
  SymbolAssignment out(pair.width() / 2);
  for (std::size_t i = 0; i < out.width(); ++i) out[i] = pair[2 * i + offset];
  return out;
}

// Complete subset construction shared by determinise and the minimal count.
struct SubsetAutomaton {
  std::vector<StateSet> macrostates;
  // (symbol, tuple of macrostate ids) -> macrostate id
  std::map<std::pair<SymbolId, SuperState>, StateId> delta;
};

SubsetAutomaton subset_construction(const ExplicitTA &x) {
  SubsetAutomaton out;
  std::map<StateSet, StateId> ids;
  auto intern = [&](const StateSet &s) {
    auto [it, inserted] =
        ids.emplace(s, static_cast<StateId>(out.macrostates.size()));
    if (inserted) out.macrostates.push_back(s);
    return it->second;
  };
  // The empty macrostate comes first so that every tuple has a target.
  intern({});
  const Alphabet &alphabet = *x.alphabet;
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t known = out.macrostates.size();
    for (SymbolId f = 0; f < alphabet.size(); ++f) {
      const std::size_t n = alphabet.symbol(f).arity;
      for_each_tuple(known, n, [&](const SuperState &macro) {
        if (out.delta.count({f, macro})) return;
        std::vector<StateSet> members(n);
        for (std::size_t i = 0; i < n; ++i) members[i] = out.macrostates[macro[i]];
        StateSet reached;
        for_each_choice(members, [&](const SuperState &src) {
          reached = set_union(reached, x.targets(f, src));
        });
        out.delta.emplace(std::make_pair(f, macro), intern(reached));
        grew = true;
      });
    }
  }
  return out;
}

}  // namespace

StateSet ExplicitTA::targets(SymbolId symbol, const SuperState &source) const {
  StateSet out;
  auto it = rules.lower_bound(ExplicitRule{symbol, source, 0});
  for (; it != rules.end() && it->symbol == symbol && it->source == source; ++it)
    out.push_back(it->target);
  return out;
}

ExplicitTA to_explicit(const TreeAutomaton &a) {
  ExplicitTA x;
  x.alphabet = a.alphabet_ptr();
  x.state_count = a.state_count();
  x.finals = a.finals();
  for (const TransitionCube &tc : extract_transitions(a))
    for (SymbolId f : a.alphabet().decode_cube(
             tc.cube, static_cast<unsigned>(tc.source.size())))
      for (StateId q : tc.targets) x.rules.insert({f, tc.source, q});
  return x;
}

ExplicitTransducer to_explicit(const Transducer &t) {
  ExplicitTransducer x;
  x.alphabet = t.alphabet_ptr();
  x.state_count = t.state_count();
  x.finals = t.finals();
  const Alphabet &alphabet = t.alphabet();
  for (const TransitionCube &tc : extract_transitions(t)) {
    const auto n = static_cast<unsigned>(tc.source.size());
    for (SymbolId f : alphabet.decode_cube(half(tc.cube, 0), n))
      for (SymbolId g : alphabet.decode_cube(half(tc.cube, 1), n))
        for (StateId q : tc.targets) x.rules.insert({f, tc.source, g, q});
  }
  return x;
}

TreeAutomaton from_explicit(const ExplicitTA &x, std::shared_ptr<Manager> manager) {
  TreeAutomaton a(x.alphabet, std::move(manager), "explicit");
  for (std::size_t q = 0; q < x.state_count; ++q) a.add_state("q" + std::to_string(q));
  for (StateId q : x.finals) a.set_final(q);
  std::map<std::pair<SymbolId, SuperState>, StateSet> grouped;
  for (const ExplicitRule &r : x.rules)
    grouped[{r.symbol, r.source}].push_back(r.target);
  for (const auto &[key, targets] : grouped)
    a.insert_transition(key.first, key.second, make_state_set(targets));
  return a;
}

Transducer from_explicit(const ExplicitTransducer &x,
                         std::shared_ptr<Manager> manager) {
  Transducer t(x.alphabet, std::move(manager), "explicit");
  for (std::size_t q = 0; q < x.state_count; ++q) t.add_state("q" + std::to_string(q));
  for (StateId q : x.finals) t.set_final(q);
  std::map<std::tuple<SymbolId, SuperState, SymbolId>, StateSet> grouped;
  for (const ExplicitTransducerRule &r : x.rules)
    grouped[{r.input, r.source, r.output}].push_back(r.target);
  for (const auto &[key, targets] : grouped)
    t.insert_rule(std::get<0>(key), std::get<1>(key), std::get<2>(key),
                  make_state_set(targets));
  return t;
}

std::vector<Term> all_terms_upto(const Alphabet &alphabet, unsigned height) {
  if (height > kOracleHeightLimit)
    throw std::invalid_argument("term height above the enumeration limit");
  std::vector<Term> terms;  // all terms of height < current level
  for (unsigned level = 1; level <= height; ++level) {
    std::vector<Term> next;
    for (SymbolId f = 0; f < alphabet.size(); ++f) {
      const unsigned n = alphabet.symbol(f).arity;
      if (n == 0) {
        next.push_back(Term{f, {}});
        continue;
      }
      for_each_tuple(terms.size(), n, [&](const SuperState &pick) {
        Term t{f, {}};
        for (StateId i : pick) t.children.push_back(terms[i]);
        next.push_back(std::move(t));
      });
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    terms = std::move(next);
  }
  return terms;
}

StateSet explicit_run(const ExplicitTA &x, const Term &term) {
  std::vector<StateSet> children;
  for (const Term &c : term.children) children.push_back(explicit_run(x, c));
  StateSet out;
  for (const ExplicitRule &r : x.rules) {
    if (r.symbol != term.symbol || r.source.size() != children.size()) continue;
    bool match = true;
    for (std::size_t i = 0; i < children.size() && match; ++i)
      match = set_contains(children[i], r.source[i]);
    if (match) out.push_back(r.target);
  }
  return make_state_set(std::move(out));
}

bool explicit_accepts(const ExplicitTA &x, const Term &term) {
  return !set_intersection(explicit_run(x, term), x.finals).empty();
}

std::set<Term> language_upto(const ExplicitTA &x, unsigned height) {
  std::set<Term> out;
  for (Term &t : all_terms_upto(*x.alphabet, height))
    if (explicit_accepts(x, t)) out.insert(std::move(t));
  return out;
}

ExplicitTA explicit_union(const ExplicitTA &a, const ExplicitTA &b) {
  ExplicitTA out{a.alphabet, a.state_count + b.state_count, a.finals, a.rules};
  const auto offset = static_cast<StateId>(a.state_count);
  for (StateId q : b.finals) out.finals.push_back(q + offset);
  for (ExplicitRule r : b.rules) {
    for (StateId &q : r.source) q += offset;
    r.target += offset;
    out.rules.insert(std::move(r));
  }
  return out;
}

ExplicitTA explicit_intersection(const ExplicitTA &a, const ExplicitTA &b) {
  const auto nb = static_cast<StateId>(b.state_count);
  ExplicitTA out{a.alphabet, a.state_count * b.state_count, {}, {}};
  for (StateId p : a.finals)
    for (StateId q : b.finals) out.finals.push_back(p * nb + q);
  out.finals = make_state_set(out.finals);
  for (const ExplicitRule &ra : a.rules)
    for (const ExplicitRule &rb : b.rules) {
      if (ra.symbol != rb.symbol || ra.source.size() != rb.source.size()) continue;
      SuperState source(ra.source.size());
      for (std::size_t i = 0; i < source.size(); ++i)
        source[i] = ra.source[i] * nb + rb.source[i];
      out.rules.insert({ra.symbol, source, ra.target * nb + rb.target});
    }
  return out;
}

ExplicitTA explicit_determinise(const ExplicitTA &x) {
  SubsetAutomaton s = subset_construction(x);
  ExplicitTA out{x.alphabet, s.macrostates.size(), {}, {}};
  for (StateId m = 0; m < s.macrostates.size(); ++m)
    if (!set_intersection(s.macrostates[m], x.finals).empty())
      out.finals.push_back(m);
  for (const auto &[key, target] : s.delta)
    out.rules.insert({key.first, key.second, target});
  return out;
}

ExplicitTA explicit_complement(const ExplicitTA &x) {
  ExplicitTA d = explicit_determinise(x);
  StateSet flipped;
  for (StateId q = 0; q < d.state_count; ++q)
    if (!set_contains(d.finals, q)) flipped.push_back(q);
  d.finals = std::move(flipped);
  return d;
}

StateSet explicit_reachable(const ExplicitTA &x) {
  std::vector<bool> reached(x.state_count, false);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const ExplicitRule &r : x.rules) {
      if (reached[r.target]) continue;
      if (std::all_of(r.source.begin(), r.source.end(),
                      [&](StateId q) { return reached[q]; })) {
        reached[r.target] = true;
        grew = true;
      }
    }
  }
  StateSet out;
  for (StateId q = 0; q < x.state_count; ++q)
    if (reached[q]) out.push_back(q);
  return out;
}

bool explicit_is_empty(const ExplicitTA &x) {
  return set_intersection(explicit_reachable(x), x.finals).empty();
}

std::size_t explicit_minimal_count(const ExplicitTA &x) {
  require_small(x, "explicit_minimal_count");
  SubsetAutomaton s = subset_construction(x);
  const std::size_t n = s.macrostates.size();
  const Alphabet &alphabet = *x.alphabet;

  // Moore refinement: a state's signature lists its class and the class of
  // every transition obtained by placing it in any position of any tuple.
  std::vector<std::size_t> cls(n);
  for (std::size_t m = 0; m < n; ++m)
    cls[m] = set_intersection(s.macrostates[m], x.finals).empty() ? 0 : 1;
  std::size_t count = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> signatures;
    std::vector<std::size_t> next(n);
    for (std::size_t m = 0; m < n; ++m) {
      std::vector<std::size_t> sig{cls[m]};
      for (SymbolId f = 0; f < alphabet.size(); ++f) {
        const std::size_t arity = alphabet.symbol(f).arity;
        for (std::size_t i = 0; i < arity; ++i)
          for_each_tuple(n, arity, [&](const SuperState &ctx) {
            if (ctx[i] != 0) return;  // enumerate each context once
            SuperState t = ctx;
            t[i] = static_cast<StateId>(m);
            sig.push_back(cls[s.delta.at({f, t})]);
          });
      }
      next[m] = signatures.emplace(sig, signatures.size()).first->second;
    }
    cls = std::move(next);
    if (signatures.size() == count) break;
    count = signatures.size();
  }
  // Macrostate 0 is the empty set; its class is the dead class.
  std::set<std::size_t> live;
  for (std::size_t m = 0; m < n; ++m)
    if (cls[m] != cls[0]) live.insert(cls[m]);
  return live.size();
}

std::vector<std::vector<bool>> explicit_simulation(const ExplicitTA &x) {
  require_small(x, "explicit_simulation");
  const std::size_t n = x.state_count;
  std::vector<std::vector<bool>> sim(n, std::vector<bool>(n, true));
  bool changed = true;
  while (changed) {
    changed = false;
    for (StateId q = 0; q < n; ++q)
      for (StateId r = 0; r < n; ++r) {
        if (!sim[q][r]) continue;
        for (const ExplicitRule &lower : x.rules) {
          if (lower.target != q) continue;
          bool matched = false;
          for (const ExplicitRule &upper : x.rules) {
            if (upper.target != r || upper.symbol != lower.symbol ||
                upper.source.size() != lower.source.size())
              continue;
            bool below = true;
            for (std::size_t i = 0; i < lower.source.size() && below; ++i)
              below = sim[lower.source[i]][upper.source[i]];
            if (below) {
              matched = true;
              break;
            }
          }
          if (!matched) {
            sim[q][r] = false;
            changed = true;
            break;
          }
        }
      }
  }
  return sim;
}

bool is_downward_simulation(const ExplicitTA &x,
                            const std::vector<std::vector<bool>> &relation) {
  for (StateId q = 0; q < x.state_count; ++q)
    for (StateId r = 0; r < x.state_count; ++r) {
      if (!relation[q][r]) continue;
      for (const ExplicitRule &lower : x.rules) {
        if (lower.target != q) continue;
        bool matched = false;
        for (const ExplicitRule &upper : x.rules) {
          if (upper.target != r || upper.symbol != lower.symbol ||
              upper.source.size() != lower.source.size())
            continue;
          bool below = true;
          for (std::size_t i = 0; i < lower.source.size() && below; ++i)
            below = relation[lower.source[i]][upper.source[i]];
          matched = matched || below;
        }
        if (!matched) return false;
      }
    }
  return true;
}

bool explicit_includes(const ExplicitTA &a, const ExplicitTA &b) {
  require_small(a, "explicit_includes");
  require_small(b, "explicit_includes");
  // Reachable pairs (states of a, states of b) reached by one common term.
  using Joint = std::pair<StateSet, StateSet>;
  std::vector<Joint> joints;
  std::set<Joint> seen;
  std::set<std::pair<SymbolId, SuperState>> done;
  const Alphabet &alphabet = *a.alphabet;
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t known = joints.size();
    for (SymbolId f = 0; f < alphabet.size(); ++f) {
      const std::size_t n = alphabet.symbol(f).arity;
      for_each_tuple(known, n, [&](const SuperState &pick) {
        if (!done.emplace(f, pick).second) return;
        std::vector<StateSet> left(n), right(n);
        for (std::size_t i = 0; i < n; ++i) {
          left[i] = joints[pick[i]].first;
          right[i] = joints[pick[i]].second;
        }
        Joint j;
        for_each_choice(left, [&](const SuperState &src) {
          j.first = set_union(j.first, a.targets(f, src));
        });
        for_each_choice(right, [&](const SuperState &src) {
          j.second = set_union(j.second, b.targets(f, src));
        });
        if (seen.insert(j).second) {
          joints.push_back(j);
          grew = true;
        }
      });
    }
  }
  for (const auto &[left, right] : joints)
    if (!set_intersection(left, a.finals).empty() &&
        set_intersection(right, b.finals).empty())
      return false;
  return true;
}

namespace {

// (state, output term) pairs of a run of `t` on `term`.
std::set<std::pair<StateId, Term>> transduce_states(const ExplicitTransducer &t,
                                                    const Term &term) {
  std::vector<std::vector<std::pair<StateId, Term>>> children;
  for (const Term &c : term.children) {
    auto sub = transduce_states(t, c);
    children.emplace_back(sub.begin(), sub.end());
    if (children.back().empty()) return {};
  }
  std::set<std::pair<StateId, Term>> out;
  const std::size_t n = children.size();
  std::vector<std::size_t> cursor(n, 0);
  while (true) {
    for (const ExplicitTransducerRule &r : t.rules) {
      if (r.input != term.symbol || r.source.size() != n) continue;
      bool match = true;
      for (std::size_t i = 0; i < n && match; ++i)
        match = children[i][cursor[i]].first == r.source[i];
      if (!match) continue;
      Term image{r.output, {}};
      for (std::size_t i = 0; i < n; ++i)
        image.children.push_back(children[i][cursor[i]].second);
      out.emplace(r.target, std::move(image));
    }
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++cursor[i] < children[i].size()) break;
      cursor[i] = 0;
    }
    if (i == n) break;
  }
  return out;
}

}  // namespace

std::set<Term> transduce(const ExplicitTransducer &t, const Term &term) {
  std::set<Term> out;
  for (const auto &[q, image] : transduce_states(t, term))
    if (set_contains(t.finals, q)) out.insert(image);
  return out;
}

std::set<Term> image_upto(const ExplicitTransducer &t, const ExplicitTA &x,
                          unsigned height) {
  std::set<Term> out;
  for (const Term &term : language_upto(x, height)) {
    auto images = transduce(t, term);
    out.insert(images.begin(), images.end());
  }
  return out;
}

ExplicitTransducer explicit_compose(const ExplicitTransducer &t1,
                                    const ExplicitTransducer &t2) {
  const auto n2 = static_cast<StateId>(t2.state_count);
  ExplicitTransducer out{t1.alphabet, t1.state_count * t2.state_count, {}, {}};
  for (StateId p : t1.finals)
    for (StateId q : t2.finals) out.finals.push_back(p * n2 + q);
  out.finals = make_state_set(out.finals);
  for (const ExplicitTransducerRule &r1 : t1.rules)
    for (const ExplicitTransducerRule &r2 : t2.rules) {
      if (r1.output != r2.input || r1.source.size() != r2.source.size()) continue;
      SuperState source(r1.source.size());
      for (std::size_t i = 0; i < source.size(); ++i)
        source[i] = r1.source[i] * n2 + r2.source[i];
      out.rules.insert({r1.input, source, r2.output, r1.target * n2 + r2.target});
    }
  return out;
}

std::shared_ptr<Alphabet> random_alphabet(std::mt19937_64 &rng,
                                          const RandomOptions &options) {
  std::uniform_int_distribution<std::size_t> count(1, options.max_symbols);
  std::uniform_int_distribution<unsigned> arity(0, options.max_arity);
  std::uniform_int_distribution<int> reuse(0, 3);
  auto alphabet = std::make_shared<Alphabet>();
  const std::size_t k = count(rng);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) {
    const unsigned n = i == 0 ? 0 : arity(rng);
    // Occasionally reuse a name with a new arity so that codewords are shared.
    std::string name;
    if (!names.empty() && reuse(rng) == 0) {
      name = names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)];
      if (alphabet->find(name, n)) name.clear();
    }
    if (name.empty()) {
      name = std::string(1, static_cast<char>('a' + names.size()));
      names.push_back(name);
    }
    alphabet->add_symbol(name, n);
  }
  alphabet->freeze();
  return alphabet;
}

ExplicitTA random_automaton(std::mt19937_64 &rng,
                            std::shared_ptr<const Alphabet> alphabet,
                            const RandomOptions &options) {
  std::uniform_int_distribution<std::size_t> states(1, options.max_states);
  std::bernoulli_distribution has_rule(options.rule_density);
  std::bernoulli_distribution is_final(options.final_probability);
  std::bernoulli_distribution second_target(0.3);
  ExplicitTA x;
  x.alphabet = alphabet;
  x.state_count = states(rng);
  std::uniform_int_distribution<StateId> pick(0, static_cast<StateId>(x.state_count - 1));
  for (StateId q = 0; q < x.state_count; ++q)
    if (is_final(rng)) x.finals.push_back(q);
  for (SymbolId f = 0; f < alphabet->size(); ++f) {
    const std::size_t n = alphabet->symbol(f).arity;
    // Leaf rules are more likely so that languages are rarely empty.
    std::bernoulli_distribution leaf_rule(0.8);
    for_each_tuple(x.state_count, n, [&](const SuperState &source) {
      if (!(n == 0 ? leaf_rule(rng) : has_rule(rng))) return;
      x.rules.insert({f, source, pick(rng)});
      if (second_target(rng)) x.rules.insert({f, source, pick(rng)});
    });
  }
  return x;
}

ExplicitTransducer random_transducer(std::mt19937_64 &rng,
                                     std::shared_ptr<const Alphabet> alphabet,
                                     const RandomOptions &options) {
  std::uniform_int_distribution<std::size_t> states(1, std::min<std::size_t>(
                                                           options.max_states, 3));
  std::bernoulli_distribution has_rule(options.rule_density);
  std::bernoulli_distribution is_final(0.6);
  ExplicitTransducer x;
  x.alphabet = alphabet;
  x.state_count = states(rng);
  std::uniform_int_distribution<StateId> pick(0, static_cast<StateId>(x.state_count - 1));
  for (StateId q = 0; q < x.state_count; ++q)
    if (is_final(rng)) x.finals.push_back(q);
  if (x.finals.empty()) x.finals.push_back(pick(rng));
  x.finals = make_state_set(x.finals);
  for (SymbolId f = 0; f < alphabet->size(); ++f) {
    const unsigned n = alphabet->symbol(f).arity;
    const auto outputs = alphabet->symbols_of_arity(n);
    std::bernoulli_distribution leaf_rule(0.7);
    for_each_tuple(x.state_count, n, [&](const SuperState &source) {
      for (SymbolId g : outputs)
        if (n == 0 ? leaf_rule(rng) : has_rule(rng))
          x.rules.insert({f, source, g, pick(rng)});
    });
  }
  return x;
}

}  // namespace symta
