#pragma once

#include <compare>
#include <string>
#include <vector>

#include "symta/alphabet.hpp"

namespace symta {

/// Ground term over a ranked alphabet.
struct Term {
  SymbolId symbol = 0;
  std::vector<Term> children;

  /// Leaves have height 1.
  unsigned height() const;
  /// Positions as a shape string, e.g. "(()())" for f(a, b); used to compare
  /// tree shapes irrespective of labels.
  std::string shape() const;
  /// `name` for leaves, `name(t1,...,tn)` otherwise.
  std::string to_string(const Alphabet &alphabet) const;

  friend bool operator==(const Term &lhs, const Term &rhs);
  friend std::strong_ordering operator<=>(const Term &lhs, const Term &rhs);
};

}  // namespace symta
