/// @file  oracle.hpp
/// @brief Explicit rule-list automata and transducers with naive reference
///        algorithms, plus seeded random instances
///
/// Everything here works on enumerated rules and plain fixpoints and shares
/// no code with the symbolic operations, so it can serve as ground truth.

#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "symta/automaton.hpp"
#include "symta/term.hpp"
#include "symta/transducer.hpp"

namespace symta {

/// Largest operand accepted by the quadratic and exponential deciders.
inline constexpr std::size_t kOracleStateLimit = 6;
/// Largest height accepted by language enumeration.
inline constexpr unsigned kOracleHeightLimit = 4;

struct ExplicitRule {
  SymbolId symbol;
  SuperState source;
  StateId target;

  friend auto operator<=>(const ExplicitRule &, const ExplicitRule &) = default;
};

struct ExplicitTA {
  std::shared_ptr<const Alphabet> alphabet;
  std::size_t state_count = 0;
  StateSet finals;
  std::set<ExplicitRule> rules;

  StateSet targets(SymbolId symbol, const SuperState &source) const;
};

struct ExplicitTransducerRule {
  SymbolId input;
  SuperState source;
  SymbolId output;
  StateId target;

  friend auto operator<=>(const ExplicitTransducerRule &,
                          const ExplicitTransducerRule &) = default;
};

struct ExplicitTransducer {
  std::shared_ptr<const Alphabet> alphabet;
  std::size_t state_count = 0;
  StateSet finals;
  std::set<ExplicitTransducerRule> rules;
};

ExplicitTA to_explicit(const TreeAutomaton &a);
ExplicitTransducer to_explicit(const Transducer &t);
/// States are named q0, q1, ...
TreeAutomaton from_explicit(const ExplicitTA &x, std::shared_ptr<Manager> manager);
Transducer from_explicit(const ExplicitTransducer &x,
                         std::shared_ptr<Manager> manager);

/// Every term over the alphabet of height at most `height`, sorted.
std::vector<Term> all_terms_upto(const Alphabet &alphabet, unsigned height);
StateSet explicit_run(const ExplicitTA &x, const Term &term);
bool explicit_accepts(const ExplicitTA &x, const Term &term);
/// Accepted terms of height at most `height`. Throws std::invalid_argument
/// above kOracleHeightLimit.
std::set<Term> language_upto(const ExplicitTA &x, unsigned height);

/// Disjoint union; states of `b` follow those of `a`.
ExplicitTA explicit_union(const ExplicitTA &a, const ExplicitTA &b);
/// Product over all pairs (p, q), numbered p * |Q_b| + q.
ExplicitTA explicit_intersection(const ExplicitTA &a, const ExplicitTA &b);
/// Complete subset construction. Macrostates are reachable state sets,
/// including the empty set, so every tuple has exactly one target.
ExplicitTA explicit_determinise(const ExplicitTA &x);
ExplicitTA explicit_complement(const ExplicitTA &x);
/// States some term reaches.
StateSet explicit_reachable(const ExplicitTA &x);
bool explicit_is_empty(const ExplicitTA &x);

/// States of the minimal complete deterministic automaton, not counting the
/// class of states that accept nothing.
std::size_t explicit_minimal_count(const ExplicitTA &x);
/// Greatest downward simulation as a matrix [lower][upper].
std::vector<std::vector<bool>> explicit_simulation(const ExplicitTA &x);
/// True iff `relation` satisfies the defining condition of a downward
/// simulation: each rule f(q1..qn) -> q with q below r is matched by a rule
/// f(r1..rn) -> r with every qi below ri.
bool is_downward_simulation(const ExplicitTA &x,
                            const std::vector<std::vector<bool>> &relation);
/// L(a) ⊆ L(b) via the joint subset construction.
bool explicit_includes(const ExplicitTA &a, const ExplicitTA &b);

/// Every output tree of `t` on `term`.
std::set<Term> transduce(const ExplicitTransducer &t, const Term &term);
/// Images of the accepted terms of height at most `height`.
std::set<Term> image_upto(const ExplicitTransducer &t, const ExplicitTA &x,
                          unsigned height);
/// Chains rules whose intermediate symbols agree. The pair (p, q) becomes
/// state p * |Q_t2| + q.
ExplicitTransducer explicit_compose(const ExplicitTransducer &t1,
                                    const ExplicitTransducer &t2);

struct RandomOptions {
  std::size_t max_states = 5;
  std::size_t max_symbols = 4;
  unsigned max_arity = 2;
  /// Probability that a given (symbol, source tuple) has rules.
  double rule_density = 0.3;
  double final_probability = 0.4;
};

/// 1..max_symbols symbols with arities up to max_arity, at least one of them
/// nullary. Names are a, b, c, ... and may repeat with a different arity.
std::shared_ptr<Alphabet> random_alphabet(std::mt19937_64 &rng,
                                          const RandomOptions &options = {});
ExplicitTA random_automaton(std::mt19937_64 &rng,
                            std::shared_ptr<const Alphabet> alphabet,
                            const RandomOptions &options = {});
/// Relabels only between symbols of equal arity.
ExplicitTransducer random_transducer(std::mt19937_64 &rng,
                                     std::shared_ptr<const Alphabet> alphabet,
                                     const RandomOptions &options = {});

}  // namespace symta
