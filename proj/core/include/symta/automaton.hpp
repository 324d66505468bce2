/// @file  automaton.hpp
/// @brief Bottom-up tree automata whose transition function lives in a
///        shared MTBDD, indexed by super-states

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symta/alphabet.hpp"
#include "symta/mtbdd.hpp"
#include "symta/term.hpp"

namespace symta {

/// Tuple of source states; the empty tuple is the initial super-state.
using SuperState = std::vector<StateId>;

/// Maps state names to dense ids 0..n-1.
class StateRegistry {
 public:
  /// Throws std::invalid_argument on a duplicate or empty name.
  StateId add(std::string name);
  std::optional<StateId> find(std::string_view name) const;
  const std::string &name(StateId id) const { return names_.at(id); }
  std::size_t size() const noexcept { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> ids_;
};

/// Super-state → MTBDD root, bucketed by arity: one slot for arity 0, an
/// array by state for arity 1, and ordered sparse maps above. An entry exists
/// iff its root is not the sink constant.
class SuperStateIndex {
 public:
  explicit SuperStateIndex(NodeRef bottom) : bottom_(bottom), nullary_(bottom) {}

  /// Root for `source`, or the sink constant when absent.
  NodeRef get(const SuperState &source) const;
  void set(const SuperState &source, NodeRef root);
  bool contains(const SuperState &source) const { return get(source) != bottom_; }

  /// Stored tuples of the given arity in lexicographic order.
  std::vector<SuperState> of_arity(std::size_t arity) const;
  /// Arities with at least one stored tuple, ascending.
  std::vector<std::size_t> arities() const;
  std::size_t size() const noexcept;
  std::size_t count(std::size_t arity) const;
  /// Visits every entry by ascending arity, then lexicographically.
  void for_each(const std::function<void(const SuperState &, NodeRef)> &visit) const;

 private:
  NodeRef bottom_;
  NodeRef nullary_;
  std::vector<NodeRef> unary_;
  std::size_t unary_count_ = 0;
  std::map<std::pair<StateId, StateId>, NodeRef> binary_;
  std::map<std::size_t, std::map<SuperState, NodeRef>> wide_;
};

/// State registry, final states and super-state index over a shared manager.
/// Common part of tree automata and relabelling transducers.
class TransitionStore {
 public:
  const Alphabet &alphabet() const noexcept { return *alphabet_; }
  const std::shared_ptr<const Alphabet> &alphabet_ptr() const noexcept {
    return alphabet_;
  }
  Manager &manager() const noexcept { return *manager_; }
  const std::shared_ptr<Manager> &manager_ptr() const noexcept { return manager_; }

  const std::string &name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  StateId add_state(std::string name);
  std::optional<StateId> find_state(std::string_view name) const {
    return states_.find(name);
  }
  const std::string &state_name(StateId id) const { return states_.name(id); }
  std::size_t state_count() const noexcept { return states_.size(); }

  /// Throws std::out_of_range for an unregistered state.
  void set_final(StateId state, bool final = true);
  bool is_final(StateId state) const;
  StateSet finals() const;

  NodeRef root(const SuperState &source) const { return index_.get(source); }
  /// Replaces the root of `source`. Leaves must only name registered states.
  void set_root(const SuperState &source, NodeRef root);
  std::vector<SuperState> super_states(std::size_t arity) const {
    return index_.of_arity(arity);
  }
  const SuperStateIndex &index() const noexcept { return index_; }

  /// Throws std::invalid_argument unless `other` shares manager and alphabet.
  void check_compatible(const TransitionStore &other) const;

 protected:
  TransitionStore(std::shared_ptr<const Alphabet> alphabet,
                  std::shared_ptr<Manager> manager, std::string name);

  void check_state(StateId state) const;
  void check_source(const SuperState &source) const;

 private:
  std::shared_ptr<const Alphabet> alphabet_;
  std::shared_ptr<Manager> manager_;
  std::string name_;
  StateRegistry states_;
  std::vector<bool> final_;
  SuperStateIndex index_;
};

/// Nondeterministic bottom-up finite tree automaton. Missing entries of the
/// index stand for transitions to the implicit sink, so every automaton is
/// virtually complete.
class TreeAutomaton : public TransitionStore {
 public:
  /// Binds the automaton to `manager`, whose bank width must equal the
  /// alphabet width. Automata bound to one manager may be combined.
  TreeAutomaton(std::shared_ptr<const Alphabet> alphabet,
                std::shared_ptr<Manager> manager, std::string name = "A");

  /// f(source) -> targets, replacing any previous targets for the pair.
  void insert_transition(SymbolId symbol, const SuperState &source,
                         const StateSet &targets);
  /// D with f(source) -> D, or ∅.
  StateSet get_transition(SymbolId symbol, const SuperState &source) const;

  /// States reachable at the root of `term`.
  StateSet run(const Term &term) const;
  bool accepts(const Term &term) const;

  /// Internal nodes reachable from all roots of the index.
  std::size_t diagram_size() const;
};

}  // namespace symta
