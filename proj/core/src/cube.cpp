#include "symta/cube.hpp"

#include <stdexcept>

namespace symta {

SymbolAssignment SymbolAssignment::parse(std::string_view text) {
  SymbolAssignment cube(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case '0': cube.bits_[i] = Bit::Zero; break;
      case '1': cube.bits_[i] = Bit::One; break;
      case 'X':
      case 'x': cube.bits_[i] = Bit::Any; break;
      default:
        throw std::invalid_argument("invalid cube character '" +
                                    std::string(1, text[i]) + "'");
    }
  }
  return cube;
}

bool SymbolAssignment::is_total() const noexcept {
  for (Bit b : bits_)
    if (b == Bit::Any) return false;
  return true;
}

bool SymbolAssignment::intersects(const SymbolAssignment &other) const {
  if (other.width() != width())
    throw std::invalid_argument("cube width mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] != Bit::Any && other.bits_[i] != Bit::Any &&
        bits_[i] != other.bits_[i])
      return false;
  }
  return true;
}

bool SymbolAssignment::covers(const SymbolAssignment &other) const {
  if (other.width() != width())
    throw std::invalid_argument("cube width mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] != Bit::Any && bits_[i] != other.bits_[i]) return false;
  }
  return true;
}

std::uint64_t SymbolAssignment::cardinality() const {
  std::uint64_t n = 1;
  for (Bit b : bits_)
    if (b == Bit::Any) n *= 2;
  return n;
}

std::string SymbolAssignment::to_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (Bit b : bits_) out += b == Bit::Zero ? '0' : b == Bit::One ? '1' : 'X';
  return out;
}

}  // namespace symta
