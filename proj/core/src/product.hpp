// Lazy exploration of product states shared by intersection, the transducer
// step and transducer composition.

#pragma once

#include <deque>
#include <map>
#include <utility>
#include <vector>

#include "symta/automaton.hpp"

namespace symta::detail {

class ProductExplorer {
 public:
  using Pair = std::pair<StateId, StateId>;

  ProductExplorer(const TransitionStore &left, const TransitionStore &right)
      : left_(left), right_(right) {}

  /// Runs the exploration. `combine(lhs_root, rhs_root, intersect)` builds
  /// the product root from two operand roots; `intersect` maps a pair of
  /// leaves to the ids of their product states, discovering new ones.
  template <class Combine>
  void run(Combine &&combine) {
    auto intersect = [this](const StateSet &lhs, const StateSet &rhs) {
      StateSet out;
      out.reserve(lhs.size() * rhs.size());
      for (StateId a : lhs)
        for (StateId b : rhs) out.push_back(intern(a, b));
      return make_state_set(std::move(out));
    };
    Manager &m = left_.manager();
    auto emit = [&](SuperState product, NodeRef lhs, NodeRef rhs) {
      NodeRef root = combine(lhs, rhs, BinaryLeafOp(intersect));
      if (!m.is_bottom(root)) roots_.emplace_back(std::move(product), root);
    };

    emit({}, left_.root({}), right_.root({}));

    std::vector<std::pair<std::vector<SuperState>, std::vector<SuperState>>>
        by_arity;
    for (std::size_t n : left_.index().arities())
      if (n > 0 && right_.index().count(n) > 0)
        by_arity.emplace_back(left_.super_states(n), right_.super_states(n));

    while (!pending_.empty()) {
      const StateId fresh = pending_.front();
      pending_.pop_front();
      processed_[fresh] = true;
      for (const auto &[lhs_sources, rhs_sources] : by_arity) {
        for (const SuperState &sp1 : lhs_sources) {
          for (const SuperState &sp2 : rhs_sources) {
            const std::size_t n = sp1.size();
            SuperState product(n);
            bool usable = true, has_fresh = false;
            for (std::size_t i = 0; i < n && usable; ++i) {
              auto it = ids_.find({sp1[i], sp2[i]});
              usable = it != ids_.end() && processed_[it->second];
              if (usable) {
                product[i] = it->second;
                has_fresh = has_fresh || it->second == fresh;
              }
            }
            if (usable && has_fresh)
              emit(std::move(product), left_.root(sp1), right_.root(sp2));
          }
        }
      }
    }
  }

  const std::vector<Pair> &pairs() const noexcept { return pairs_; }
  const std::vector<std::pair<SuperState, NodeRef>> &roots() const noexcept {
    return roots_;
  }

 private:
  StateId intern(StateId a, StateId b) {
    auto [it, inserted] =
        ids_.emplace(Pair{a, b}, static_cast<StateId>(pairs_.size()));
    if (inserted) {
      pairs_.emplace_back(a, b);
      processed_.push_back(false);
      pending_.push_back(it->second);
    }
    return it->second;
  }

  const TransitionStore &left_;
  const TransitionStore &right_;
  std::map<Pair, StateId> ids_;
  std::vector<Pair> pairs_;
  std::vector<bool> processed_;
  std::deque<StateId> pending_;
  std::vector<std::pair<SuperState, NodeRef>> roots_;
};

/// Registers states s0..s{count-1} on a fresh store.
template <class Store>
void add_numbered_states(Store &store, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i)
    store.add_state("s" + std::to_string(i));
}

}  // namespace symta::detail
