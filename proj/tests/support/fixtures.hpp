/// @file  fixtures.hpp
/// @brief Shared automata and helpers for the test suites

#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "symta/alphabet.hpp"
#include "symta/automaton.hpp"
#include "symta/io.hpp"
#include "symta/mtbdd.hpp"
#include "symta/oracle.hpp"
#include "symta/term.hpp"
#include "symta/transducer.hpp"

namespace symta::testing {

/// Running example: symbols a:0 b:0 b:2 c:0 c:1 d:1 coded a=00 b=01 c=10
/// d=11, states q1 q2 q3 with q3 final and rules
///   b -> {q1,q2}, c -> {q2}, d(q2) -> {q3},
///   b(q1,q3) -> {q1,q2}, c(q3) -> {q1,q2}.
struct RunningExample {
  std::shared_ptr<Alphabet> alphabet;
  std::shared_ptr<Manager> manager;
  SymbolId a, b0, b2, c0, c1, d;
  StateId q1, q2, q3;
  TreeAutomaton automaton;

  RunningExample() : RunningExample(make_alphabet()) {}

 private:
  static std::shared_ptr<Alphabet> make_alphabet() {
    auto alphabet = std::make_shared<Alphabet>();
    alphabet->add_symbol("a", 0);
    alphabet->add_symbol("b", 0);
    alphabet->add_symbol("b", 2);
    alphabet->add_symbol("c", 0);
    alphabet->add_symbol("c", 1);
    alphabet->add_symbol("d", 1);
    alphabet->freeze();
    return alphabet;
  }

  explicit RunningExample(std::shared_ptr<Alphabet> alpha)
      : alphabet(alpha),
        manager(std::make_shared<Manager>(alpha->width())),
        a(*alpha->find("a", 0)),
        b0(*alpha->find("b", 0)),
        b2(*alpha->find("b", 2)),
        c0(*alpha->find("c", 0)),
        c1(*alpha->find("c", 1)),
        d(*alpha->find("d", 1)),
        automaton(alpha, manager, "example") {
    q1 = automaton.add_state("q1");
    q2 = automaton.add_state("q2");
    q3 = automaton.add_state("q3");
    automaton.set_final(q3);
    automaton.insert_transition(b0, {}, {q1, q2});
    automaton.insert_transition(c0, {}, {q2});
    automaton.insert_transition(d, {q2}, {q3});
    automaton.insert_transition(b2, {q1, q3}, {q1, q2});
    automaton.insert_transition(c1, {q3}, {q1, q2});
  }
};

/// Single-pair relabelling example over four leaf symbols coded 00..11.
/// The automaton maps 01 -> A and 10 -> B at the initial super-state; the
/// transducer has rules 0X -> 3(1X) and 10 -> 7(01) over states t0..t7.
struct RelabelExample {
  std::shared_ptr<Alphabet> alphabet;
  std::shared_ptr<Manager> manager;
  TreeAutomaton automaton;
  Transducer transducer;
  StateId A = 0, B = 0;

  RelabelExample() : RelabelExample(make_alphabet()) {}

 private:
  static std::shared_ptr<Alphabet> make_alphabet() {
    auto alphabet = std::make_shared<Alphabet>();
    for (const char *n : {"s00", "s01", "s10", "s11"}) alphabet->add_symbol(n, 0);
    alphabet->freeze();
    return alphabet;
  }

  explicit RelabelExample(std::shared_ptr<Alphabet> alpha)
      : alphabet(alpha),
        manager(std::make_shared<Manager>(alpha->width())),
        automaton(alpha, manager, "input"),
        transducer(alpha, manager, "tau") {
    A = automaton.add_state("A");
    B = automaton.add_state("B");
    automaton.set_final(A);
    automaton.set_final(B);
    automaton.insert_transition(*alpha->find("s01", 0), {}, {A});
    automaton.insert_transition(*alpha->find("s10", 0), {}, {B});
    for (int i = 0; i < 8; ++i) transducer.add_state("t" + std::to_string(i));
    transducer.set_final(3);
    transducer.set_final(7);
    transducer.insert_rule_cube(SymbolAssignment::parse("0X"), {},
                                SymbolAssignment::parse("1X"), {3});
    transducer.insert_rule_cube(SymbolAssignment::parse("10"), {},
                                SymbolAssignment::parse("01"), {7});
  }
};

/// One final state q with f(q, ..., q) -> q(f) for every symbol f.
inline Transducer identity_transducer(std::shared_ptr<const Alphabet> alphabet,
                                      std::shared_ptr<Manager> manager) {
  Transducer t(alphabet, std::move(manager), "identity");
  const StateId q = t.add_state("q");
  t.set_final(q);
  for (SymbolId f = 0; f < alphabet->size(); ++f)
    t.insert_rule(f, SuperState(alphabet->symbol(f).arity, q), f, {q});
  return t;
}

/// Automata parsed from Timbuk texts onto one merged alphabet and manager.
struct Loaded {
  std::shared_ptr<Alphabet> alphabet;
  std::shared_ptr<Manager> manager;
  std::vector<TreeAutomaton> automata;

  explicit Loaded(const std::vector<std::string> &texts) {
    std::vector<TimbukDocument> docs;
    for (const auto &t : texts) docs.push_back(parse_timbuk_document(t));
    std::vector<const TimbukDocument *> pointers;
    for (const auto &d : docs) pointers.push_back(&d);
    alphabet = merged_alphabet(pointers);
    manager = std::make_shared<Manager>(alphabet->width());
    for (const auto &d : docs) automata.push_back(build_automaton(d, alphabet, manager));
  }
  const TreeAutomaton &operator[](std::size_t i) const { return automata[i]; }
  Term term(const std::string &text) const { return parse_term(text, *alphabet); }
};

inline std::set<Term> language3(const TreeAutomaton &a) {
  return language_upto(to_explicit(a), 3);
}

/// Every total assignment of `width` bits, in counting order with the
/// first position most significant.
inline std::vector<SymbolAssignment> total_cubes(unsigned width) {
  std::vector<SymbolAssignment> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << width); ++v) {
    SymbolAssignment cube(width);
    for (unsigned i = 0; i < width; ++i)
      cube[i] = (v >> (width - 1 - i)) & 1 ? Bit::One : Bit::Zero;
    out.push_back(cube);
  }
  return out;
}

inline SymbolAssignment random_cube(std::mt19937_64 &rng, unsigned width,
                                    double any_probability = 0.5) {
  std::bernoulli_distribution any(any_probability), one(0.5);
  SymbolAssignment cube(width);
  for (unsigned i = 0; i < width; ++i)
    cube[i] = any(rng) ? Bit::Any : (one(rng) ? Bit::One : Bit::Zero);
  return cube;
}

inline StateSet random_states(std::mt19937_64 &rng, StateId universe) {
  StateSet out;
  std::bernoulli_distribution pick(0.4);
  for (StateId q = 0; q < universe; ++q)
    if (pick(rng)) out.push_back(q);
  if (out.empty()) out.push_back(std::uniform_int_distribution<StateId>(0, universe - 1)(rng));
  return out;
}

/// Union of up to `max_cubes` random cubes over `bank`, each with a random
/// non-empty leaf over states 0..3.
inline NodeRef random_diagram(Manager &m, std::mt19937_64 &rng, Bank bank = Bank::X,
                              unsigned max_cubes = 6) {
  const auto unite = [](const StateSet &x, const StateSet &y) { return set_union(x, y); };
  NodeRef root = m.bottom();
  const unsigned k = std::uniform_int_distribution<unsigned>(0, max_cubes)(rng);
  for (unsigned i = 0; i < k; ++i) {
    NodeRef part = m.create_mtbdd(random_cube(rng, m.bank_width()),
                                  m.intern_leaf(random_states(rng, 4)), bank);
    root = m.apply(root, part, unite);
  }
  return root;
}

/// Full variable assignment with `cube` on `bank` and Any elsewhere.
inline std::vector<Bit> on_bank(const Manager &m, const SymbolAssignment &cube, Bank bank) {
  std::vector<Bit> full(m.variable_count(), Bit::Any);
  for (unsigned i = 0; i < cube.width(); ++i) full[Manager::variable(bank, i)] = cube[i];
  return full;
}

}  // namespace symta::testing
