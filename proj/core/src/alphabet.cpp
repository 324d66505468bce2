#include "symta/alphabet.hpp"

#include <algorithm>
#include <stdexcept>

namespace symta {

SymbolId Alphabet::add_symbol(std::string name, unsigned arity) {
  if (frozen_) throw std::logic_error("alphabet is frozen");
  if (name.empty()) throw std::invalid_argument("symbol name must not be empty");
  auto key = std::make_pair(name, arity);
  if (lookup_.count(key))
    throw std::invalid_argument("duplicate symbol " + name + ":" +
                                std::to_string(arity));
  auto id = static_cast<SymbolId>(symbols_.size());
  auto [it, inserted] =
      name_lookup_.emplace(name, static_cast<std::uint32_t>(names_.size()));
  if (inserted) {
    names_.push_back(name);
    symbols_of_name_.emplace_back();
  }
  symbols_of_name_[it->second].push_back(id);
  name_of_symbol_.push_back(it->second);
  lookup_.emplace(std::move(key), id);
  symbols_.push_back(Symbol{std::move(name), arity});
  return id;
}

void Alphabet::freeze(std::optional<unsigned> width) {
  if (frozen_) throw std::logic_error("alphabet is already frozen");
  unsigned minimum = 0;
  while ((std::uint64_t{1} << minimum) < names_.size()) ++minimum;
  if (width && *width < minimum)
    throw std::invalid_argument("alphabet width " + std::to_string(*width) +
                                " is below the minimum " +
                                std::to_string(minimum));
  width_ = width.value_or(minimum);
  if (width_ > 63) throw std::invalid_argument("alphabet width exceeds 63");
  frozen_ = true;
}

void Alphabet::require_frozen() const {
  if (!frozen_) throw std::logic_error("alphabet is not frozen");
}

unsigned Alphabet::width() const {
  require_frozen();
  return width_;
}

std::optional<SymbolId> Alphabet::find(std::string_view name,
                                       unsigned arity) const {
  auto it = lookup_.find(std::make_pair(std::string(name), arity));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<SymbolId> Alphabet::find_name(std::string_view name) const {
  auto it = name_lookup_.find(std::string(name));
  if (it == name_lookup_.end()) return {};
  return symbols_of_name_[it->second];
}

std::vector<SymbolId> Alphabet::symbols_of_arity(unsigned arity) const {
  std::vector<SymbolId> out;
  for (SymbolId id = 0; id < symbols_.size(); ++id)
    if (symbols_[id].arity == arity) out.push_back(id);
  return out;
}

unsigned Alphabet::max_arity() const noexcept {
  unsigned m = 0;
  for (const Symbol &s : symbols_) m = std::max(m, s.arity);
  return m;
}

std::uint64_t Alphabet::codeword(SymbolId id) const {
  require_frozen();
  return name_of_symbol_.at(id);
}

SymbolAssignment Alphabet::encode(SymbolId id) const {
  const std::uint64_t code = codeword(id);
  SymbolAssignment cube(width_);
  for (unsigned i = 0; i < width_; ++i)
    cube[i] = ((code >> (width_ - 1 - i)) & 1) ? Bit::One : Bit::Zero;
  return cube;
}

std::vector<SymbolId> Alphabet::decode_cube(const SymbolAssignment &cube,
                                            std::optional<unsigned> arity) const {
  require_frozen();
  if (cube.width() != width_)
    throw std::invalid_argument("cube width does not match alphabet width");
  auto accept = [&](SymbolId id) {
    return !arity || symbols_[id].arity == *arity;
  };
  std::vector<SymbolId> out;
  if (cube.is_total()) {
    std::uint64_t code = 0;
    for (unsigned i = 0; i < width_; ++i)
      code = (code << 1) | (cube[i] == Bit::One ? 1u : 0u);
    if (code < names_.size())
      for (SymbolId id : symbols_of_name_[code])
        if (accept(id)) out.push_back(id);
    return out;
  }
  // Fixed bits as (mask, value) over the codeword.
  std::uint64_t mask = 0, value = 0;
  for (unsigned i = 0; i < width_; ++i) {
    if (cube[i] == Bit::Any) continue;
    const std::uint64_t bit = std::uint64_t{1} << (width_ - 1 - i);
    mask |= bit;
    if (cube[i] == Bit::One) value |= bit;
  }
  for (SymbolId id = 0; id < symbols_.size(); ++id)
    if ((name_of_symbol_[id] & mask) == value && accept(id)) out.push_back(id);
  return out;
}

SymbolAssignment Alphabet::interleave(const SymbolAssignment &input,
                                      const SymbolAssignment &output) {
  if (input.width() != output.width())
    throw std::invalid_argument("cannot interleave cubes of different widths");
  SymbolAssignment cube(2 * input.width());
  for (std::size_t i = 0; i < input.width(); ++i) {
    cube[2 * i] = input[i];
    cube[2 * i + 1] = output[i];
  }
  return cube;
}

SymbolAssignment Alphabet::encode_pair(SymbolId input, SymbolId output) const {
  if (symbol(input).arity != symbol(output).arity)
    throw std::invalid_argument("relabelling pair " + symbol(input).name +
                                " / " + symbol(output).name +
                                " has mismatched arities");
  return interleave(encode(input), encode(output));
}

bool operator==(const Alphabet &lhs, const Alphabet &rhs) {
  return lhs.frozen_ == rhs.frozen_ && lhs.width_ == rhs.width_ &&
         lhs.symbols_ == rhs.symbols_;
}

}  // namespace symta
