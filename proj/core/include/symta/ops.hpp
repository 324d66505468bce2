/// @file  ops.hpp
/// @brief Language and structural operations on tree automata
///
/// Every operation takes operands bound to one manager and alphabet and
/// returns a fresh automaton on the same manager. Result states are named
/// s0, s1, ... in the order the operation creates them.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "symta/automaton.hpp"

namespace symta {

/// Partition of the states of an automaton. Classes are numbered 0..k-1.
struct QuotientMap {
  /// Class of each state, indexed by state id.
  std::vector<std::uint32_t> class_of;
  /// Least member of each class. The sink, when it takes part, has the id
  /// one past the last state.
  std::vector<StateId> representative;
  /// Class of the implicit sink. States in it accept nothing and are dropped
  /// by reduce_by_equivalence.
  std::optional<std::uint32_t> sink_class;

  std::size_t class_count() const noexcept { return representative.size(); }
  /// Classes numbered by least member.
  static QuotientMap from_classes(const std::vector<std::uint32_t> &class_of,
                                  std::optional<std::uint32_t> sink_class = {});
  static QuotientMap identity(std::size_t state_count);
};

/// Binary relation on the states of one automaton, stored densely.
class SimulationRelation {
 public:
  explicit SimulationRelation(std::size_t state_count, bool full = false)
      : size_(state_count), bits_(state_count * state_count, full) {}

  std::size_t state_count() const noexcept { return size_; }
  /// True iff `lower` is simulated by `upper`.
  bool contains(StateId lower, StateId upper) const {
    return bits_[index(lower, upper)];
  }
  void set(StateId lower, StateId upper, bool value) {
    bits_[index(lower, upper)] = value;
  }
  std::vector<std::pair<StateId, StateId>> pairs() const;

  friend bool operator==(const SimulationRelation &,
                         const SimulationRelation &) = default;

 private:
  std::size_t index(StateId lower, StateId upper) const {
    return static_cast<std::size_t>(lower) * size_ + upper;
  }

  std::size_t size_;
  std::vector<bool> bits_;
};

/// Disjoint union. States of `a2` follow those of `a1`. The initial
/// super-state is combined with a single Apply; every other root is reused
/// from `a1` or relabelled from `a2`.
TreeAutomaton union_of(const TreeAutomaton &a1, const TreeAutomaton &a2);

/// Pair of operand states behind each product state, indexed by product id.
using ProductOrigins = std::vector<std::pair<StateId, StateId>>;

/// Product automaton over the reachable pairs of states.
TreeAutomaton intersection(const TreeAutomaton &a1, const TreeAutomaton &a2,
                           ProductOrigins *origins = nullptr);

/// Subset construction over reachable macrostates. The empty macrostate is
/// left implicit.
TreeAutomaton determinise(const TreeAutomaton &a);

/// Determinises, adds the empty macrostate as an explicit state, completes
/// every tuple over all symbols of the alphabet and inverts the finals.
TreeAutomaton complement(const TreeAutomaton &a);

/// Drops states no term reaches. States are renumbered by discovery, which
/// is independent of the input numbering when the input is deterministic.
TreeAutomaton prune_unreachable(const TreeAutomaton &a);

/// True iff no term is accepted. Stops at the first reachable final state.
bool is_empty(const TreeAutomaton &a);

/// Merges the states of each class. The sink class, if any, is removed
/// together with the transitions entering or leaving it.
TreeAutomaton reduce_by_equivalence(const TreeAutomaton &a,
                                    const QuotientMap &quotient);

/// Coarsest congruence of a deterministic automaton, with the implicit sink
/// taking part as a non-final state. Throws std::invalid_argument when a
/// transition has more than one target.
QuotientMap compute_congruence(const TreeAutomaton &a);

/// Minimal deterministic automaton without the sink, or with no states at
/// all when the language is empty. The output numbering is canonical, so
/// language-equal inputs yield identical automata.
TreeAutomaton minimise(const TreeAutomaton &a);

/// Greatest downward simulation.
SimulationRelation downward_simulation(const TreeAutomaton &a);

/// Quotient by mutual downward simulation.
TreeAutomaton reduce_by_simulation(const TreeAutomaton &a);

/// Antichain element: a state of the left automaton and the set of right
/// states reached by some common term.
using ProductPair = std::pair<StateId, StateSet>;

/// Observer called with the current antichain after each insertion.
using AntichainObserver =
    std::function<void(const std::vector<ProductPair> &antichain)>;

/// L(a1) ⊆ L(a2) by an antichain search that keeps ⊆-minimal partner sets.
bool check_inclusion_antichain(const TreeAutomaton &a1, const TreeAutomaton &a2,
                               const AntichainObserver &observer = {});

/// L(a1) ⊆ L(a2) as emptiness of a1 ∩ complement(a2).
bool check_inclusion_classical(const TreeAutomaton &a1, const TreeAutomaton &a2);

}  // namespace symta
