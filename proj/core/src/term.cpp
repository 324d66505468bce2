#include "symta/term.hpp"

#include <algorithm>

namespace symta {

unsigned Term::height() const {
  unsigned h = 0;
  for (const Term &c : children) h = std::max(h, c.height());
  return h + 1;
}

std::string Term::shape() const {
  std::string out = "(";
  for (const Term &c : children) out += c.shape();
  return out + ")";
}

std::string Term::to_string(const Alphabet &alphabet) const {
  std::string out = alphabet.symbol(symbol).name;
  if (children.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) out += ',';
    out += children[i].to_string(alphabet);
  }
  return out + ')';
}

bool operator==(const Term &lhs, const Term &rhs) {
  return lhs.symbol == rhs.symbol && lhs.children == rhs.children;
}

std::strong_ordering operator<=>(const Term &lhs, const Term &rhs) {
  if (auto c = lhs.symbol <=> rhs.symbol; c != 0) return c;
  return std::lexicographical_compare_three_way(
      lhs.children.begin(), lhs.children.end(), rhs.children.begin(),
      rhs.children.end());
}

}  // namespace symta
