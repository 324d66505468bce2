/// @file  io.hpp
/// @brief Timbuk-style text format, term syntax, transition extraction and
///        Graphviz rendering
///
/// Document grammar, tokens separated by whitespace, `%` starting a comment:
///
///     Ops a:0 f:2 ...
///     Automaton <name>            (or: Transducer <name>)
///     States q0 q1[:n] ...
///     Final States q1 ...
///     Transitions
///     a -> q0                     (or: a() -> q0)
///     f(q0,q1) -> q1
///     f(q0,q1) / g -> q1          (transducers only)
///
/// Several rules with one left-hand side unite their targets.

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symta/automaton.hpp"
#include "symta/transducer.hpp"

namespace symta {

/// Malformed input. `line` is 1-based, 0 when no line applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string &message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct TimbukRule {
  std::string symbol;
  std::vector<std::string> source;
  /// Output symbol of a transducer rule.
  std::optional<std::string> output;
  std::string target;
  std::size_t line = 0;
};

/// Syntax of one document, before names are resolved.
struct TimbukDocument {
  std::vector<std::pair<std::string, unsigned>> ops;
  bool transducer = false;
  std::string name;
  std::vector<std::string> states;
  std::vector<std::string> finals;
  /// Line of each entry of `states` and `finals`.
  std::vector<std::size_t> state_lines;
  std::vector<std::size_t> final_lines;
  std::vector<TimbukRule> rules;
};

TimbukDocument parse_timbuk_document(std::string_view text);

/// Alphabet declaring the operators of all documents in first-seen order,
/// frozen at the minimum width.
std::shared_ptr<Alphabet> merged_alphabet(
    const std::vector<const TimbukDocument *> &documents);

/// Resolves names against `alphabet`. The operators used must be declared in
/// the document itself.
TreeAutomaton build_automaton(const TimbukDocument &doc,
                              std::shared_ptr<const Alphabet> alphabet,
                              std::shared_ptr<Manager> manager);
Transducer build_transducer(const TimbukDocument &doc,
                            std::shared_ptr<const Alphabet> alphabet,
                            std::shared_ptr<Manager> manager);

/// Parses a document into an automaton with its own alphabet and manager.
TreeAutomaton parse_timbuk(std::string_view text);
Transducer parse_timbuk_transducer(std::string_view text);

/// Canonical text: operators in registration order, states in id order,
/// super-states by arity then lexicographically, symbols in registration
/// order, one line per target.
std::string write_timbuk(const TreeAutomaton &a);
std::string write_timbuk(const Transducer &t);

/// Parses `name` or `name(t, ..., t)`; whitespace is ignored. The symbol is
/// looked up by name and number of arguments.
Term parse_term(std::string_view text, const Alphabet &alphabet);

/// One diagram path: a cube over the chosen banks and the leaf it reaches.
struct TransitionCube {
  SuperState source;
  SymbolAssignment cube;
  StateSet targets;
};

/// Splits `root` into disjoint cubes over `banks`, laid out position-major
/// (for x and y: x1, y1, x2, y2, ...). Variables the path does not test stay
/// X; 0 is explored before 1. Sink leaves are skipped. Throws
/// std::invalid_argument if the diagram tests a variable outside `banks`.
std::vector<std::pair<SymbolAssignment, StateSet>> extract_cubes(
    const Manager &m, NodeRef root, const std::vector<Bank> &banks);

/// extract_cubes over bank x for every super-state, in index order.
std::vector<TransitionCube> extract_transitions(const TreeAutomaton &a);
/// As above over banks x and y.
std::vector<TransitionCube> extract_transitions(const Transducer &t);

/// Graphviz digraph with states as circles (finals doubled) and super-states
/// as records holding one field per position. Edges into a super-state carry
/// the position, edges out of it the comma-separated symbol names.
std::string to_dot(const TreeAutomaton &a);

}  // namespace symta
