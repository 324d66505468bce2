#include "symta/mtbdd.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace symta {

namespace {

std::atomic<std::uint32_t> next_manager_id{1};

constexpr std::uint32_t kNoNode = 0xffffffffu;

inline std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

inline std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

StateSet make_state_set(std::vector<StateId> states) {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  return states;
}

StateSet set_union(const StateSet &lhs, const StateSet &rhs) {
  if (lhs.empty()) return rhs;
  if (rhs.empty()) return lhs;
  StateSet out;
  out.reserve(lhs.size() + rhs.size());
  std::set_union(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                 std::back_inserter(out));
  return out;
}

StateSet set_intersection(const StateSet &lhs, const StateSet &rhs) {
  StateSet out;
  std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                        std::back_inserter(out));
  return out;
}

bool set_contains(const StateSet &set, StateId state) {
  return std::binary_search(set.begin(), set.end(), state);
}

bool is_subset(const StateSet &sub, const StateSet &super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

std::string format_state_set(const StateSet &set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(set[i]);
  }
  return out + "}";
}

std::size_t Manager::NodeKeyHash::operator()(const NodeKey &key) const noexcept {
  std::size_t h = key.var;
  h = mix(h, key.low);
  return mix(h, key.high);
}

std::size_t Manager::StateSetHash::operator()(const StateSet &set) const noexcept {
  std::size_t h = set.size();
  for (StateId s : set) h = mix(h, s);
  return h;
}

Manager::Manager(unsigned bank_width)
    : id_(next_manager_id.fetch_add(1)), bank_width_(bank_width) {
  leaves_.emplace_back();
  leaf_index_.emplace(StateSet{}, 0);
  leaf_node_.push_back(0);
  nodes_.push_back(Node{kTerminal, 0, 0});
}

LeafRef Manager::intern_leaf(StateSet value) {
  if (!std::is_sorted(value.begin(), value.end()) ||
      std::adjacent_find(value.begin(), value.end()) != value.end())
    value = make_state_set(std::move(value));
  auto it = leaf_index_.find(value);
  if (it != leaf_index_.end()) return LeafRef{it->second};
  auto id = static_cast<std::uint32_t>(leaves_.size());
  leaves_.push_back(value);
  leaf_index_.emplace(std::move(value), id);
  leaf_node_.push_back(kNoNode);
  return LeafRef{id};
}

const StateSet &Manager::leaf_value(LeafRef leaf) const {
  if (leaf.id >= leaves_.size()) throw std::out_of_range("unknown leaf");
  return leaves_[leaf.id];
}

std::uint32_t Manager::terminal(LeafRef leaf) {
  std::uint32_t &slot = leaf_node_.at(leaf.id);
  if (slot == kNoNode) {
    slot = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(Node{kTerminal, leaf.id, 0});
  }
  return slot;
}

NodeRef Manager::constant(LeafRef leaf) { return ref(terminal(leaf)); }

void Manager::check_owned(NodeRef node) const {
  if (node.manager_ != id_ || node.index_ >= nodes_.size())
    throw std::invalid_argument("node does not belong to this manager");
}

bool Manager::is_terminal(NodeRef node) const {
  check_owned(node);
  return nodes_[node.index_].var == kTerminal;
}

LeafRef Manager::leaf_of(NodeRef node) const {
  if (!is_terminal(node)) throw std::invalid_argument("not a terminal node");
  return LeafRef{nodes_[node.index_].low};
}

unsigned Manager::var_of(NodeRef node) const {
  if (is_terminal(node)) throw std::invalid_argument("terminal has no variable");
  return nodes_[node.index_].var;
}

NodeRef Manager::low(NodeRef node) const {
  if (is_terminal(node)) throw std::invalid_argument("terminal has no children");
  return ref(nodes_[node.index_].low);
}

NodeRef Manager::high(NodeRef node) const {
  if (is_terminal(node)) throw std::invalid_argument("terminal has no children");
  return ref(nodes_[node.index_].high);
}

std::uint32_t Manager::make(std::uint32_t var, std::uint32_t low,
                            std::uint32_t high) {
  if (low == high) return low;
  if (var >= variable_count() || top_var(low) <= var || top_var(high) <= var)
    throw std::logic_error("variable order violated in make_node");
  NodeKey key{var, low, high};
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  auto index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(Node{var, low, high});
  unique_.emplace(key, index);
  return index;
}

NodeRef Manager::make_node(unsigned var, NodeRef low, NodeRef high) {
  check_owned(low);
  check_owned(high);
  return ref(make(var, low.index_, high.index_));
}

std::uint32_t Manager::cofactor(std::uint32_t index, std::uint32_t var,
                                bool value) const {
  const Node &n = nodes_[index];
  if (n.var != var) return index;
  return value ? n.high : n.low;
}

std::uint32_t Manager::cube_chain(
    std::span<const std::pair<unsigned, Bit>> bindings,
    std::uint32_t leaf_node) {
  std::uint32_t node = leaf_node;
  for (auto it = bindings.rbegin(); it != bindings.rend(); ++it) {
    switch (it->second) {
      case Bit::Zero: node = make(it->first, node, 0); break;
      case Bit::One: node = make(it->first, 0, node); break;
      case Bit::Any: break;
    }
  }
  return node;
}

NodeRef Manager::create_mtbdd(const SymbolAssignment &cube, LeafRef leaf,
                              Bank bank) {
  if (cube.width() != bank_width_)
    throw std::invalid_argument("cube width " + std::to_string(cube.width()) +
                                " does not match bank width " +
                                std::to_string(bank_width_));
  std::vector<std::pair<unsigned, Bit>> bindings;
  bindings.reserve(cube.width());
  for (unsigned i = 0; i < bank_width_; ++i)
    bindings.emplace_back(variable(bank, i), cube[i]);
  return ref(cube_chain(bindings, terminal(leaf)));
}

NodeRef Manager::create_pair_mtbdd(const SymbolAssignment &cube, LeafRef leaf,
                                   Bank in, Bank out) {
  if (cube.width() != 2 * bank_width_)
    throw std::invalid_argument("pair cube width " +
                                std::to_string(cube.width()) +
                                " does not match twice the bank width " +
                                std::to_string(bank_width_));
  if (in == out) throw std::invalid_argument("pair cube needs distinct banks");
  std::vector<std::pair<unsigned, Bit>> bindings;
  for (unsigned i = 0; i < bank_width_; ++i) {
    bindings.emplace_back(variable(in, i), cube[2 * i]);
    bindings.emplace_back(variable(out, i), cube[2 * i + 1]);
  }
  std::sort(bindings.begin(), bindings.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  return ref(cube_chain(bindings, terminal(leaf)));
}

std::uint32_t Manager::apply_rec(
    std::uint32_t lhs, std::uint32_t rhs, BinaryLeafOp op,
    std::unordered_map<std::uint64_t, std::uint32_t> &memo) {
  auto key = pair_key(lhs, rhs);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::uint32_t result;
  const std::uint32_t lv = top_var(lhs), rv = top_var(rhs);
  if (lv == kTerminal && rv == kTerminal) {
    ++stats_.functor_calls;
    result = terminal(intern_leaf(
        op(leaves_[nodes_[lhs].low], leaves_[nodes_[rhs].low])));
  } else {
    const std::uint32_t v = std::min(lv, rv);
    std::uint32_t lo = apply_rec(cofactor(lhs, v, false),
                                 cofactor(rhs, v, false), op, memo);
    std::uint32_t hi = apply_rec(cofactor(lhs, v, true),
                                 cofactor(rhs, v, true), op, memo);
    result = make(v, lo, hi);
  }
  memo.emplace(key, result);
  return result;
}

NodeRef Manager::apply_internal(NodeRef lhs, NodeRef rhs, BinaryLeafOp op) {
  std::unordered_map<std::uint64_t, std::uint32_t> memo;
  return ref(apply_rec(lhs.index_, rhs.index_, op, memo));
}

NodeRef Manager::apply(NodeRef lhs, NodeRef rhs, BinaryLeafOp op) {
  check_owned(lhs);
  check_owned(rhs);
  ++stats_.apply_calls;
  return apply_internal(lhs, rhs, op);
}

NodeRef Manager::monadic_apply(NodeRef root, UnaryLeafOp op) {
  check_owned(root);
  ++stats_.monadic_apply_calls;
  std::unordered_map<std::uint32_t, std::uint32_t> memo;
  auto rec = [&](auto &self, std::uint32_t n) -> std::uint32_t {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    std::uint32_t result;
    const Node node = nodes_[n];
    if (node.var == kTerminal) {
      ++stats_.functor_calls;
      result = terminal(intern_leaf(op(leaves_[node.low])));
    } else {
      std::uint32_t lo = self(self, node.low);
      std::uint32_t hi = self(self, node.high);
      result = make(node.var, lo, hi);
    }
    memo.emplace(n, result);
    return result;
  };
  return ref(rec(rec, root.index_));
}

NodeRef Manager::project(NodeRef root, const SymbolAssignment &cube,
                         Bank bank) {
  check_owned(root);
  if (cube.width() != bank_width_)
    throw std::invalid_argument("projection cube width mismatch");
  std::vector<std::pair<std::uint32_t, bool>> constraints;
  for (unsigned i = 0; i < bank_width_; ++i)
    if (cube[i] != Bit::Any)
      constraints.emplace_back(variable(bank, i), cube[i] == Bit::One);

  std::unordered_map<std::uint64_t, std::uint32_t> memo;
  auto rec = [&](auto &self, std::uint32_t n, std::uint32_t k) -> std::uint32_t {
    if (k == constraints.size() || n == 0) return n;
    auto key = pair_key(n, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const auto [cv, bit] = constraints[k];
    const std::uint32_t tv = top_var(n);
    std::uint32_t result;
    if (tv < cv) {
      std::uint32_t lo = self(self, nodes_[n].low, k);
      std::uint32_t hi = self(self, nodes_[n].high, k);
      result = make(tv, lo, hi);
    } else {
      std::uint32_t sub = self(self, cofactor(n, cv, bit), k + 1);
      result = bit ? make(cv, 0, sub) : make(cv, sub, 0);
    }
    memo.emplace(key, result);
    return result;
  };
  return ref(rec(rec, root.index_, 0));
}

NodeRef Manager::trim_variables(NodeRef root, Bank bank) {
  check_owned(root);
  auto unite = [](const StateSet &l, const StateSet &r) {
    return set_union(l, r);
  };
  std::unordered_map<std::uint32_t, std::uint32_t> memo;
  auto rec = [&](auto &self, std::uint32_t n) -> std::uint32_t {
    const Node node = nodes_[n];
    if (node.var == kTerminal) return n;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    std::uint32_t lo = self(self, node.low);
    std::uint32_t hi = self(self, node.high);
    std::uint32_t result;
    if (bank_of(node.var) == bank) {
      std::unordered_map<std::uint64_t, std::uint32_t> apply_memo;
      result = apply_rec(lo, hi, unite, apply_memo);
    } else {
      result = make(node.var, lo, hi);
    }
    memo.emplace(n, result);
    return result;
  };
  return ref(rec(rec, root.index_));
}

NodeRef Manager::rename_variables(NodeRef root, Bank from, Bank to) {
  check_owned(root);
  if (from == to) return root;
  if (uses_bank(root, to))
    throw std::invalid_argument("target bank already occurs in the diagram");

  // mux(v, l, h) builds (v ? h : l) for children that may test variables
  // smaller than v after renaming.
  std::unordered_map<NodeKey, std::uint32_t, NodeKeyHash> mux_memo;
  auto mux = [&](auto &self, std::uint32_t v, std::uint32_t l,
                 std::uint32_t h) -> std::uint32_t {
    const std::uint32_t lt = top_var(l), ht = top_var(h);
    if (lt > v && ht > v) return make(v, l, h);
    NodeKey key{v, l, h};
    if (auto it = mux_memo.find(key); it != mux_memo.end()) return it->second;
    const std::uint32_t u = std::min(lt, ht);
    if (u == v) throw std::logic_error("renamed variable occurs twice on a path");
    std::uint32_t lo = self(self, v, cofactor(l, u, false), cofactor(h, u, false));
    std::uint32_t hi = self(self, v, cofactor(l, u, true), cofactor(h, u, true));
    std::uint32_t result = make(u, lo, hi);
    mux_memo.emplace(key, result);
    return result;
  };

  std::unordered_map<std::uint32_t, std::uint32_t> memo;
  auto rec = [&](auto &self, std::uint32_t n) -> std::uint32_t {
    const Node node = nodes_[n];
    if (node.var == kTerminal) return n;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    std::uint32_t lo = self(self, node.low);
    std::uint32_t hi = self(self, node.high);
    std::uint32_t v = bank_of(node.var) == from
                          ? variable(to, position_of(node.var))
                          : node.var;
    std::uint32_t result = mux(mux, v, lo, hi);
    memo.emplace(n, result);
    return result;
  };
  return ref(rec(rec, root.index_));
}

const StateSet &Manager::eval_index(std::uint32_t index,
                                    std::span<const Bit> assignment) const {
  while (nodes_[index].var != kTerminal) {
    const Node &n = nodes_[index];
    Bit b = assignment[n.var];
    if (b == Bit::Any)
      throw std::invalid_argument("assignment leaves variable " +
                                  std::to_string(n.var) + " unbound");
    index = b == Bit::One ? n.high : n.low;
  }
  return leaves_[nodes_[index].low];
}

const StateSet &Manager::eval(NodeRef root,
                              std::span<const Bit> assignment) const {
  check_owned(root);
  if (assignment.size() != variable_count())
    throw std::invalid_argument("assignment must cover every variable");
  return eval_index(root.index_, assignment);
}

const StateSet &Manager::eval(NodeRef root, const SymbolAssignment &cube,
                              Bank bank) const {
  check_owned(root);
  if (cube.width() != bank_width_ || !cube.is_total())
    throw std::invalid_argument("eval needs a total cube of the bank width");
  std::vector<Bit> full(variable_count(), Bit::Any);
  for (unsigned i = 0; i < bank_width_; ++i) full[variable(bank, i)] = cube[i];
  return eval_index(root.index_, full);
}

const StateSet &Manager::eval_pair(NodeRef root,
                                   const SymbolAssignment &cube) const {
  check_owned(root);
  if (cube.width() != 2 * bank_width_ || !cube.is_total())
    throw std::invalid_argument("eval_pair needs a total pair cube");
  std::vector<Bit> full(variable_count(), Bit::Any);
  for (unsigned i = 0; i < bank_width_; ++i) {
    full[variable(Bank::X, i)] = cube[2 * i];
    full[variable(Bank::Y, i)] = cube[2 * i + 1];
  }
  return eval_index(root.index_, full);
}

std::vector<unsigned> Manager::support(NodeRef root) const {
  check_owned(root);
  std::vector<bool> seen_var(variable_count(), false);
  std::unordered_set<std::uint32_t> visited;
  std::vector<std::uint32_t> stack{root.index_};
  while (!stack.empty()) {
    std::uint32_t n = stack.back();
    stack.pop_back();
    if (nodes_[n].var == kTerminal || !visited.insert(n).second) continue;
    seen_var[nodes_[n].var] = true;
    stack.push_back(nodes_[n].low);
    stack.push_back(nodes_[n].high);
  }
  std::vector<unsigned> out;
  for (unsigned v = 0; v < seen_var.size(); ++v)
    if (seen_var[v]) out.push_back(v);
  return out;
}

bool Manager::uses_bank(NodeRef root, Bank bank) const {
  for (unsigned v : support(root))
    if (bank_of(v) == bank) return true;
  return false;
}

void Manager::for_each_leaf(NodeRef root,
                            const std::function<void(LeafRef)> &visit) const {
  check_owned(root);
  std::unordered_set<std::uint32_t> visited;
  std::vector<std::uint32_t> stack{root.index_};
  while (!stack.empty()) {
    std::uint32_t n = stack.back();
    stack.pop_back();
    if (!visited.insert(n).second) continue;
    if (nodes_[n].var == kTerminal) {
      visit(LeafRef{nodes_[n].low});
    } else {
      stack.push_back(nodes_[n].high);
      stack.push_back(nodes_[n].low);
    }
  }
}

std::size_t Manager::reachable_size(std::span<const NodeRef> roots) const {
  std::unordered_set<std::uint32_t> visited;
  std::vector<std::uint32_t> stack;
  for (NodeRef r : roots) {
    check_owned(r);
    stack.push_back(r.index_);
  }
  std::size_t count = 0;
  while (!stack.empty()) {
    std::uint32_t n = stack.back();
    stack.pop_back();
    if (nodes_[n].var == kTerminal || !visited.insert(n).second) continue;
    ++count;
    stack.push_back(nodes_[n].low);
    stack.push_back(nodes_[n].high);
  }
  return count;
}

std::size_t Manager::node_count() const noexcept { return unique_.size(); }

std::string Manager::to_dot(
    std::span<const NodeRef> roots,
    const std::function<std::string(StateId)> &state_name) const {
  std::ostringstream out;
  out << "digraph mtbdd {\n";
  std::unordered_set<std::uint32_t> visited;
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> stack;
  for (NodeRef r : roots) {
    check_owned(r);
    stack.push_back(r.index_);
  }
  while (!stack.empty()) {
    std::uint32_t n = stack.back();
    stack.pop_back();
    if (!visited.insert(n).second) continue;
    order.push_back(n);
    if (nodes_[n].var != kTerminal) {
      stack.push_back(nodes_[n].high);
      stack.push_back(nodes_[n].low);
    }
  }
  std::sort(order.begin(), order.end());
  for (std::uint32_t n : order) {
    const Node &node = nodes_[n];
    if (node.var == kTerminal) {
      const StateSet &set = leaves_[node.low];
      std::string label = "{";
      for (std::size_t i = 0; i < set.size(); ++i) {
        if (i) label += ", ";
        label += state_name ? state_name(set[i]) : std::to_string(set[i]);
      }
      label += "}";
      std::string escaped;
      for (char c : label) {
        if (c == '"' || c == '\\') escaped += '\\';
        escaped += c;
      }
      out << "  n" << n << " [shape=box, label=\"" << escaped << "\"];\n";
    } else {
      out << "  n" << n << " [shape=circle, label=\"" << node.var << "\"];\n";
      out << "  n" << n << " -> n" << node.low << " [style=dashed];\n";
      out << "  n" << n << " -> n" << node.high << ";\n";
    }
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    out << "  root" << i << " [shape=plaintext, label=\"root " << i
        << "\"];\n";
    out << "  root" << i << " -> n" << roots[i].index_ << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace symta
