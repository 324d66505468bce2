/// @file  transducer.hpp
/// @brief Relabelling tree transducers over paired input/output variables

#pragma once

#include <memory>
#include <string>

#include "symta/automaton.hpp"
#include "symta/ops.hpp"

namespace symta {

/// Relabelling transducer. A rule f(q1, ..., qn) -> q(g) rewrites the label
/// f to g without changing the shape of the tree. Rules of one source tuple
/// share a diagram whose input symbol is encoded on bank x and the output
/// symbol on bank y, interleaved as (x1, y1, ..., xn, yn).
class Transducer : public TransitionStore {
 public:
  Transducer(std::shared_ptr<const Alphabet> alphabet,
             std::shared_ptr<Manager> manager, std::string name = "T");

  /// f(source) -> targets(g), replacing previous targets of the triple.
  /// Throws std::invalid_argument if the arities of f, g and the source
  /// differ or if `targets` is empty.
  void insert_rule(SymbolId input, const SuperState &source, SymbolId output,
                   const StateSet &targets);
  /// As insert_rule for every pair of codewords compatible with the cubes.
  /// Arities are not checked.
  void insert_rule_cube(const SymbolAssignment &input,
                        const SuperState &source,
                        const SymbolAssignment &output,
                        const StateSet &targets);
  /// Targets of f(source) -> q(g), or ∅.
  StateSet get_rule(SymbolId input, const SuperState &source,
                    SymbolId output) const;
};

/// Automaton for the image of L(a) under `t`. Product states (q_a, q_t) are
/// numbered in discovery order and final iff both components are.
TreeAutomaton apply_step(const Transducer &t, const TreeAutomaton &a,
                         ProductOrigins *origins = nullptr);

/// Transducer relating t to t'' iff t1 relates t to some t' and t2 relates
/// t' to t''.
Transducer compose(const Transducer &t1, const Transducer &t2,
                   ProductOrigins *origins = nullptr);

}  // namespace symta
