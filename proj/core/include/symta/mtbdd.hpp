/// @file  mtbdd.hpp
/// @brief Shared reduced ordered multi-terminal BDDs with set-valued leaves

#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "symta/cube.hpp"
#include "symta/function_ref.hpp"

namespace symta {

using StateId = std::uint32_t;

/// Finite set of states, kept sorted and duplicate-free.
using StateSet = std::vector<StateId>;

/// Sorts and deduplicates `states`.
StateSet make_state_set(std::vector<StateId> states);
StateSet set_union(const StateSet &lhs, const StateSet &rhs);
StateSet set_intersection(const StateSet &lhs, const StateSet &rhs);
bool set_contains(const StateSet &set, StateId state);
bool is_subset(const StateSet &sub, const StateSet &super);
std::string format_state_set(const StateSet &set);

/// Variable banks. Variables of the banks are interleaved in the global
/// order: x1 < y1 < z1 < x2 < y2 < z2 < ...
enum class Bank : std::uint8_t { X = 0, Y = 1, Z = 2 };
inline constexpr unsigned kBankCount = 3;

/// Handle of an interned leaf value. Two handles of one manager are equal iff
/// their sets are equal. Id 0 is the empty set, i.e. the sink.
struct LeafRef {
  std::uint32_t id = 0;

  bool is_bottom() const noexcept { return id == 0; }
  friend bool operator==(LeafRef, LeafRef) = default;
  friend auto operator<=>(LeafRef, LeafRef) = default;
};

/// Handle of a diagram node. A default-constructed handle is invalid.
class NodeRef {
 public:
  NodeRef() = default;

  bool valid() const noexcept { return manager_ != 0; }
  std::uint32_t index() const noexcept { return index_; }

  friend bool operator==(NodeRef, NodeRef) = default;
  friend auto operator<=>(NodeRef, NodeRef) = default;

 private:
  friend class Manager;
  NodeRef(std::uint32_t manager, std::uint32_t index)
      : manager_(manager), index_(index) {}

  std::uint32_t manager_ = 0;
  std::uint32_t index_ = 0;
};

/// Leafwise binary operation used by Manager::apply. May carry state.
using BinaryLeafOp = FunctionRef<StateSet(const StateSet &, const StateSet &)>;
/// Leafwise unary operation used by Manager::monadic_apply.
using UnaryLeafOp = FunctionRef<StateSet(const StateSet &)>;

/// Owner of a shared MTBDD: the unique table of internal nodes and the pool
/// of leaf sets. Nodes are never freed; a manager is dropped as a whole.
///
/// A manager and every root it produced form one mutation unit and must not
/// be used concurrently while any operation that interns nodes is running.
class Manager {
 public:
  struct Stats {
    /// Top-level Apply invocations issued through the public interface.
    std::uint64_t apply_calls = 0;
    std::uint64_t monadic_apply_calls = 0;
    /// Leaf functor invocations over all Apply / MonadicApply calls.
    std::uint64_t functor_calls = 0;
  };

  /// Creates a manager with `bank_width` variables in each of the x, y and z
  /// banks.
  explicit Manager(unsigned bank_width);
  Manager(const Manager &) = delete;
  Manager &operator=(const Manager &) = delete;

  unsigned bank_width() const noexcept { return bank_width_; }
  unsigned variable_count() const noexcept { return bank_width_ * kBankCount; }

  static constexpr unsigned variable(Bank bank, unsigned position) noexcept {
    return position * kBankCount + static_cast<unsigned>(bank);
  }
  static constexpr Bank bank_of(unsigned variable) noexcept {
    return static_cast<Bank>(variable % kBankCount);
  }
  static constexpr unsigned position_of(unsigned variable) noexcept {
    return variable / kBankCount;
  }

  // Leaf pool.
  LeafRef intern_leaf(StateSet value);
  static constexpr LeafRef bottom_leaf() noexcept { return LeafRef{0}; }
  const StateSet &leaf_value(LeafRef leaf) const;
  std::size_t leaf_count() const noexcept { return leaves_.size(); }

  // Node access.
  NodeRef bottom() const noexcept { return NodeRef(id_, 0); }
  NodeRef constant(LeafRef leaf);
  NodeRef constant(StateSet value) { return constant(intern_leaf(std::move(value))); }
  bool is_terminal(NodeRef node) const;
  bool is_bottom(NodeRef node) const { return node == bottom(); }
  LeafRef leaf_of(NodeRef terminal) const;
  unsigned var_of(NodeRef internal) const;
  NodeRef low(NodeRef internal) const;
  NodeRef high(NodeRef internal) const;
  /// Returns the node (var ? high : low), reusing an existing node if one
  /// exists and collapsing it when low == high. Children must only test
  /// variables greater than `var`.
  NodeRef make_node(unsigned var, NodeRef low, NodeRef high);

  /// Diagram mapping every total assignment of `bank` compatible with `cube`
  /// to `leaf` and everything else to the sink.
  NodeRef create_mtbdd(const SymbolAssignment &cube, LeafRef leaf,
                       Bank bank = Bank::X);
  /// As create_mtbdd over a 2n-wide cube laid out as (a1, b1, ..., an, bn)
  /// where a_i binds bank `in` and b_i binds bank `out`.
  NodeRef create_pair_mtbdd(const SymbolAssignment &cube, LeafRef leaf,
                            Bank in = Bank::X, Bank out = Bank::Y);

  /// Pointwise combination: eval(result, a) = op(eval(lhs, a), eval(rhs, a)).
  /// `op` runs at most once per distinct pair of terminals reached. It should
  /// map (∅, ∅) to ∅, otherwise the result becomes dense.
  NodeRef apply(NodeRef lhs, NodeRef rhs, BinaryLeafOp op);
  NodeRef monadic_apply(NodeRef root, UnaryLeafOp op);

  /// Restriction to the assignments of `bank` compatible with `cube`.
  NodeRef project(NodeRef root, const SymbolAssignment &cube,
                  Bank bank = Bank::X);
  /// Existentially removes the variables of `bank`, uniting the leaf sets
  /// that collide.
  NodeRef trim_variables(NodeRef root, Bank bank);
  /// Renames each variable of `from` to the variable of `to` at the same
  /// position. Throws std::invalid_argument when `to` already occurs in root.
  NodeRef rename_variables(NodeRef root, Bank from, Bank to);

  /// Value at a full assignment indexed by global variable. Positions set to
  /// Bit::Any are only allowed for variables the diagram does not test.
  const StateSet &eval(NodeRef root, std::span<const Bit> assignment) const;
  /// Value at a total cube over one bank. The root must only test `bank`.
  const StateSet &eval(NodeRef root, const SymbolAssignment &cube,
                       Bank bank = Bank::X) const;
  /// Value at a total pair cube (a1, b1, ..., an, bn) over banks x and y.
  const StateSet &eval_pair(NodeRef root, const SymbolAssignment &cube) const;

  /// Sorted set of variables tested anywhere below `root`.
  std::vector<unsigned> support(NodeRef root) const;
  bool uses_bank(NodeRef root, Bank bank) const;
  /// Calls `visit` once for each distinct terminal reachable from `root`, in
  /// depth-first order with 0-edges taken before 1-edges.
  void for_each_leaf(NodeRef root,
                     const std::function<void(LeafRef)> &visit) const;
  /// Number of internal nodes reachable from the given roots.
  std::size_t reachable_size(std::span<const NodeRef> roots) const;
  /// Total internal nodes ever created.
  std::size_t node_count() const noexcept;

  /// Graphviz rendering: internal nodes as circles labelled by variable index,
  /// dashed 0-edges, solid 1-edges, terminals as boxes listing the state set.
  std::string to_dot(std::span<const NodeRef> roots,
                     const std::function<std::string(StateId)> &state_name =
                         {}) const;

  const Stats &stats() const noexcept { return stats_; }

  /// Throws std::invalid_argument unless `node` belongs to this manager.
  void check_owned(NodeRef node) const;

 private:
  static constexpr std::uint32_t kTerminal = 0xffffffffu;

  struct Node {
    std::uint32_t var;
    std::uint32_t low;   // leaf id for terminals
    std::uint32_t high;
  };
  struct NodeKey {
    std::uint32_t var, low, high;
    friend bool operator==(const NodeKey &, const NodeKey &) = default;
  };
  struct NodeKeyHash {
    std::size_t operator()(const NodeKey &key) const noexcept;
  };
  struct StateSetHash {
    std::size_t operator()(const StateSet &set) const noexcept;
  };

  NodeRef ref(std::uint32_t index) const { return NodeRef(id_, index); }
  std::uint32_t top_var(std::uint32_t index) const { return nodes_[index].var; }
  std::uint32_t cofactor(std::uint32_t index, std::uint32_t var,
                         bool value) const;
  std::uint32_t make(std::uint32_t var, std::uint32_t low, std::uint32_t high);
  std::uint32_t terminal(LeafRef leaf);

  std::uint32_t apply_rec(std::uint32_t lhs, std::uint32_t rhs,
                          BinaryLeafOp op,
                          std::unordered_map<std::uint64_t, std::uint32_t> &memo);
  NodeRef apply_internal(NodeRef lhs, NodeRef rhs, BinaryLeafOp op);
  std::uint32_t cube_chain(std::span<const std::pair<unsigned, Bit>> bindings,
                           std::uint32_t leaf_node);
  const StateSet &eval_index(std::uint32_t index,
                             std::span<const Bit> assignment) const;

  std::uint32_t id_;
  unsigned bank_width_;
  std::vector<Node> nodes_;
  std::unordered_map<NodeKey, std::uint32_t, NodeKeyHash> unique_;
  std::deque<StateSet> leaves_;
  std::unordered_map<StateSet, std::uint32_t, StateSetHash> leaf_index_;
  std::vector<std::uint32_t> leaf_node_;
  Stats stats_;
};

}  // namespace symta
