/// @file  alphabet.hpp
/// @brief Ranked alphabet and the binary encoding of its symbols

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symta/cube.hpp"

namespace symta {

using SymbolId = std::uint32_t;

struct Symbol {
  std::string name;
  unsigned arity = 0;

  friend bool operator==(const Symbol &, const Symbol &) = default;
};

/// Ranked alphabet. Symbols are registered first; freezing assigns one
/// codeword per distinct name by counting in first-registration order, so
/// symbols that only differ in arity share a codeword. Codeword bit 0 is the
/// most significant bit and is bound to the first variable of a bank.
class Alphabet {
 public:
  Alphabet() = default;

  /// Throws std::invalid_argument for a duplicate (name, arity) pair or an
  /// empty name, std::logic_error once frozen.
  SymbolId add_symbol(std::string name, unsigned arity);

  /// Fixes the encoding. `width` may raise the number of variables above the
  /// minimum ceil(lg #names), never lower it.
  void freeze(std::optional<unsigned> width = std::nullopt);
  bool frozen() const noexcept { return frozen_; }

  /// Number of boolean variables per symbol. Throws unless frozen.
  unsigned width() const;

  std::size_t size() const noexcept { return symbols_.size(); }
  std::size_t name_count() const noexcept { return names_.size(); }
  const Symbol &symbol(SymbolId id) const { return symbols_.at(id); }
  const std::vector<Symbol> &symbols() const noexcept { return symbols_; }
  std::optional<SymbolId> find(std::string_view name, unsigned arity) const;
  /// All symbols carrying `name`, in registration order.
  std::vector<SymbolId> find_name(std::string_view name) const;
  std::vector<SymbolId> symbols_of_arity(unsigned arity) const;
  unsigned max_arity() const noexcept;

  /// Codeword of the symbol's name as an integer.
  std::uint64_t codeword(SymbolId id) const;
  /// Total cube of width() for the symbol.
  SymbolAssignment encode(SymbolId id) const;
  /// Registered symbols compatible with `cube`, in registration order,
  /// optionally restricted to one arity.
  std::vector<SymbolId> decode_cube(
      const SymbolAssignment &cube,
      std::optional<unsigned> arity = std::nullopt) const;
  /// Cube of width 2 * width() interleaving the codewords as
  /// (a1, b1, ..., an, bn). Both symbols must have the same arity.
  SymbolAssignment encode_pair(SymbolId input, SymbolId output) const;
  /// Interleaves two cubes of width() the same way as encode_pair.
  static SymbolAssignment interleave(const SymbolAssignment &input,
                                     const SymbolAssignment &output);

  friend bool operator==(const Alphabet &lhs, const Alphabet &rhs);

 private:
  void require_frozen() const;

  std::vector<Symbol> symbols_;
  std::vector<std::uint32_t> name_of_symbol_;
  std::vector<std::string> names_;
  std::vector<std::vector<SymbolId>> symbols_of_name_;
  std::unordered_map<std::string, std::uint32_t> name_lookup_;
  std::map<std::pair<std::string, unsigned>, SymbolId, std::less<>> lookup_;
  bool frozen_ = false;
  unsigned width_ = 0;
};

}  // namespace symta
