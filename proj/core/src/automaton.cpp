#include "symta/automaton.hpp"

#include <stdexcept>

namespace symta {

StateId StateRegistry::add(std::string name) {
  if (name.empty()) throw std::invalid_argument("state name must not be empty");
  auto id = static_cast<StateId>(names_.size());
  if (!ids_.emplace(name, id).second)
    throw std::invalid_argument("duplicate state " + name);
  names_.push_back(std::move(name));
  return id;
}

std::optional<StateId> StateRegistry::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

NodeRef SuperStateIndex::get(const SuperState &source) const {
  switch (source.size()) {
    case 0: return nullary_;
    case 1: return source[0] < unary_.size() ? unary_[source[0]] : bottom_;
    case 2: {
      auto it = binary_.find({source[0], source[1]});
      return it == binary_.end() ? bottom_ : it->second;
    }
    default: {
      auto bucket = wide_.find(source.size());
      if (bucket == wide_.end()) return bottom_;
      auto it = bucket->second.find(source);
      return it == bucket->second.end() ? bottom_ : it->second;
    }
  }
}

void SuperStateIndex::set(const SuperState &source, NodeRef root) {
  const bool erase = root == bottom_;
  switch (source.size()) {
    case 0: nullary_ = root; break;
    case 1: {
      const StateId q = source[0];
      if (q >= unary_.size()) {
        if (erase) return;
        unary_.resize(q + 1, bottom_);
      }
      if ((unary_[q] == bottom_) != erase) unary_count_ += erase ? -1 : 1;
      unary_[q] = root;
      break;
    }
    case 2:
      if (erase)
        binary_.erase({source[0], source[1]});
      else
        binary_[{source[0], source[1]}] = root;
      break;
    default:
      if (erase) {
        auto bucket = wide_.find(source.size());
        if (bucket == wide_.end()) return;
        bucket->second.erase(source);
        if (bucket->second.empty()) wide_.erase(bucket);
      } else {
        wide_[source.size()][source] = root;
      }
  }
}

std::vector<SuperState> SuperStateIndex::of_arity(std::size_t arity) const {
  std::vector<SuperState> out;
  switch (arity) {
    case 0:
      if (nullary_ != bottom_) out.emplace_back();
      break;
    case 1:
      for (StateId q = 0; q < unary_.size(); ++q)
        if (unary_[q] != bottom_) out.push_back({q});
      break;
    case 2:
      for (const auto &[key, root] : binary_) out.push_back({key.first, key.second});
      break;
    default:
      if (auto bucket = wide_.find(arity); bucket != wide_.end())
        for (const auto &[key, root] : bucket->second) out.push_back(key);
  }
  return out;
}

std::vector<std::size_t> SuperStateIndex::arities() const {
  std::vector<std::size_t> out;
  if (nullary_ != bottom_) out.push_back(0);
  if (unary_count_) out.push_back(1);
  if (!binary_.empty()) out.push_back(2);
  for (const auto &[arity, bucket] : wide_) out.push_back(arity);
  return out;
}

std::size_t SuperStateIndex::count(std::size_t arity) const {
  switch (arity) {
    case 0: return nullary_ != bottom_ ? 1 : 0;
    case 1: return unary_count_;
    case 2: return binary_.size();
    default: {
      auto bucket = wide_.find(arity);
      return bucket == wide_.end() ? 0 : bucket->second.size();
    }
  }
}

std::size_t SuperStateIndex::size() const noexcept {
  std::size_t n = (nullary_ != bottom_ ? 1 : 0) + unary_count_ + binary_.size();
  for (const auto &[arity, bucket] : wide_) n += bucket.size();
  return n;
}

void SuperStateIndex::for_each(
    const std::function<void(const SuperState &, NodeRef)> &visit) const {
  if (nullary_ != bottom_) visit({}, nullary_);
  for (StateId q = 0; q < unary_.size(); ++q)
    if (unary_[q] != bottom_) visit({q}, unary_[q]);
  for (const auto &[key, root] : binary_) visit({key.first, key.second}, root);
  for (const auto &[arity, bucket] : wide_)
    for (const auto &[key, root] : bucket) visit(key, root);
}

TransitionStore::TransitionStore(std::shared_ptr<const Alphabet> alphabet,
                                 std::shared_ptr<Manager> manager,
                                 std::string name)
    : alphabet_(std::move(alphabet)),
      manager_(std::move(manager)),
      name_(std::move(name)),
      index_(manager_ ? manager_->bottom() : NodeRef()) {
  if (!alphabet_ || !manager_)
    throw std::invalid_argument("alphabet and manager are required");
  if (!alphabet_->frozen())
    throw std::invalid_argument("alphabet must be frozen before use");
  if (alphabet_->width() != manager_->bank_width())
    throw std::invalid_argument("manager bank width differs from alphabet width");
}

StateId TransitionStore::add_state(std::string name) {
  StateId id = states_.add(std::move(name));
  final_.push_back(false);
  return id;
}

void TransitionStore::check_state(StateId state) const {
  if (state >= states_.size())
    throw std::out_of_range("unregistered state " + std::to_string(state));
}

void TransitionStore::check_source(const SuperState &source) const {
  for (StateId q : source) check_state(q);
}

void TransitionStore::set_final(StateId state, bool final) {
  check_state(state);
  final_[state] = final;
}

bool TransitionStore::is_final(StateId state) const {
  check_state(state);
  return final_[state];
}

StateSet TransitionStore::finals() const {
  StateSet out;
  for (StateId q = 0; q < final_.size(); ++q)
    if (final_[q]) out.push_back(q);
  return out;
}

void TransitionStore::set_root(const SuperState &source, NodeRef root) {
  check_source(source);
  manager_->check_owned(root);
  index_.set(source, root);
}

void TransitionStore::check_compatible(const TransitionStore &other) const {
  if (manager_ != other.manager_)
    throw std::invalid_argument("operands are bound to different managers");
  if (alphabet_ != other.alphabet_ && !(*alphabet_ == *other.alphabet_))
    throw std::invalid_argument("operands use different alphabets");
}

TreeAutomaton::TreeAutomaton(std::shared_ptr<const Alphabet> alphabet,
                             std::shared_ptr<Manager> manager, std::string name)
    : TransitionStore(std::move(alphabet), std::move(manager), std::move(name)) {}

void TreeAutomaton::insert_transition(SymbolId symbol, const SuperState &source,
                                      const StateSet &targets) {
  if (alphabet().symbol(symbol).arity != source.size())
    throw std::invalid_argument("symbol " + alphabet().symbol(symbol).name +
                                " has arity " +
                                std::to_string(alphabet().symbol(symbol).arity) +
                                " but the source tuple has " +
                                std::to_string(source.size()) + " states");
  check_source(source);
  if (targets.empty()) throw std::invalid_argument("empty target set");
  for (StateId q : targets) check_state(q);

  Manager &m = manager();
  NodeRef single =
      m.create_mtbdd(alphabet().encode(symbol), m.intern_leaf(targets));
  auto overwrite = [](const StateSet &old, const StateSet &fresh) {
    return fresh.empty() ? old : fresh;
  };
  set_root(source, m.apply(root(source), single, overwrite));
}

StateSet TreeAutomaton::get_transition(SymbolId symbol,
                                       const SuperState &source) const {
  if (alphabet().symbol(symbol).arity != source.size())
    throw std::invalid_argument("arity mismatch for symbol " +
                                alphabet().symbol(symbol).name);
  NodeRef stored = root(source);
  if (manager().is_bottom(stored)) return {};
  Manager &m = manager();
  NodeRef projected = m.project(stored, alphabet().encode(symbol));
  StateSet states;
  m.monadic_apply(projected, [&states](const StateSet &leaf) {
    states = set_union(states, leaf);
    return leaf;
  });
  return states;
}

StateSet TreeAutomaton::run(const Term &term) const {
  if (term.symbol >= alphabet().size())
    throw std::invalid_argument("term uses an unknown symbol");
  const Symbol &sym = alphabet().symbol(term.symbol);
  if (sym.arity != term.children.size())
    throw std::invalid_argument("symbol " + sym.name + " applied to " +
                                std::to_string(term.children.size()) +
                                " arguments, arity is " +
                                std::to_string(sym.arity));
  std::vector<StateSet> child_states;
  child_states.reserve(term.children.size());
  for (const Term &child : term.children) {
    child_states.push_back(run(child));
    if (child_states.back().empty()) return {};
  }
  StateSet reached;
  SuperState tuple(child_states.size());
  std::vector<std::size_t> cursor(child_states.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < tuple.size(); ++i)
      tuple[i] = child_states[i][cursor[i]];
    reached = set_union(reached, get_transition(term.symbol, tuple));
    std::size_t i = 0;
    for (; i < cursor.size(); ++i) {
      if (++cursor[i] < child_states[i].size()) break;
      cursor[i] = 0;
    }
    if (i == cursor.size()) break;
  }
  return reached;
}

bool TreeAutomaton::accepts(const Term &term) const {
  for (StateId q : run(term))
    if (is_final(q)) return true;
  return false;
}

std::size_t TreeAutomaton::diagram_size() const {
  std::vector<NodeRef> roots;
  index().for_each([&](const SuperState &, NodeRef r) { roots.push_back(r); });
  return manager().reachable_size(roots);
}

}  // namespace symta
