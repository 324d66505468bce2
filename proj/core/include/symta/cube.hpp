#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace symta {

/// Value of one boolean variable inside a cube.
enum class Bit : std::uint8_t { Zero, One, Any };

/// Fixed-width ternary cube over boolean variables. A position holding
/// `Bit::Any` stands for both values, so one cube denotes a set of symbols.
class SymbolAssignment {
 public:
  SymbolAssignment() = default;
  explicit SymbolAssignment(std::size_t width, Bit fill = Bit::Any)
      : bits_(width, fill) {}

  /// Parses a string over {0,1,X,x}. Throws std::invalid_argument otherwise.
  static SymbolAssignment parse(std::string_view text);

  std::size_t width() const noexcept { return bits_.size(); }
  Bit operator[](std::size_t i) const { return bits_[i]; }
  Bit &operator[](std::size_t i) { return bits_[i]; }

  bool is_total() const noexcept;
  /// True iff some total assignment is described by both cubes.
  bool intersects(const SymbolAssignment &other) const;
  /// True iff every assignment of `other` is an assignment of this cube.
  bool covers(const SymbolAssignment &other) const;
  /// Number of total assignments denoted (2^#Any).
  std::uint64_t cardinality() const;

  std::string to_string() const;

  friend bool operator==(const SymbolAssignment &,
                         const SymbolAssignment &) = default;
  friend auto operator<=>(const SymbolAssignment &,
                          const SymbolAssignment &) = default;

 private:
  std::vector<Bit> bits_;
};

}  // namespace symta
