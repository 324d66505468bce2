#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "symta/automaton.hpp"
#include "symta/io.hpp"
#include "symta/oracle.hpp"

namespace symta {
namespace {

using testing::RunningExample;

TEST(AutomatonTest, InsertThenEvalInitialRoot) {
  RunningExample ex;
  EXPECT_EQ(ex.manager->eval(ex.automaton.root({}), SymbolAssignment::parse("01")),
            (StateSet{ex.q1, ex.q2}));
}

TEST(AutomatonTest, InsertOverwrites) {
  RunningExample ex;
  TreeAutomaton a(ex.alphabet, ex.manager);
  const StateId p = a.add_state("p"), q = a.add_state("q");
  a.insert_transition(ex.c1, {p}, {p});
  a.insert_transition(ex.c1, {p}, {q});
  EXPECT_EQ(a.get_transition(ex.c1, {p}), StateSet{q});
}

TEST(AutomatonTest, InsertLeavesOtherSymbolsEmpty) {
  RunningExample ex;
  TreeAutomaton a(ex.alphabet, ex.manager);
  const StateId p = a.add_state("p");
  a.insert_transition(ex.b0, {}, {p});
  for (SymbolId s : ex.alphabet->symbols_of_arity(0))
    if (s != ex.b0) EXPECT_EQ(a.get_transition(s, {}), StateSet{});
  EXPECT_EQ(a.get_transition(ex.b0, {}), StateSet{p});
}

TEST(AutomatonTest, InsertErrors) {
  RunningExample ex;
  TreeAutomaton a(ex.alphabet, ex.manager);
  const StateId p = a.add_state("p");
  EXPECT_THROW(a.insert_transition(ex.b2, {p}, {p}), std::invalid_argument);
  EXPECT_THROW(a.insert_transition(ex.c1, {p}, {}), std::invalid_argument);
  EXPECT_THROW(a.insert_transition(ex.c1, {p}, {9}), std::out_of_range);
  EXPECT_THROW(a.insert_transition(ex.c1, {9}, {p}), std::out_of_range);
}

TEST(AutomatonTest, GetTransitionMatchesRunningExample) {
  RunningExample ex;
  const TreeAutomaton &a = ex.automaton;
  EXPECT_EQ(a.get_transition(ex.c1, {ex.q3}), (StateSet{ex.q1, ex.q2}));
  EXPECT_EQ(a.get_transition(ex.a, {}), StateSet{});
  EXPECT_EQ(a.get_transition(ex.b0, {}), (StateSet{ex.q1, ex.q2}));
  EXPECT_EQ(a.get_transition(ex.c0, {}), StateSet{ex.q2});
  EXPECT_EQ(a.get_transition(ex.d, {ex.q2}), StateSet{ex.q3});
  EXPECT_EQ(a.get_transition(ex.b2, {ex.q1, ex.q3}), (StateSet{ex.q1, ex.q2}));
  EXPECT_EQ(a.get_transition(ex.d, {ex.q1}), StateSet{});
  EXPECT_EQ(a.get_transition(ex.b2, {ex.q3, ex.q3}), StateSet{});
  EXPECT_THROW(a.get_transition(ex.b2, {ex.q1}), std::invalid_argument);
}

TEST(AutomatonTest, VirtualCompleteness) {
  RunningExample ex;
  const TreeAutomaton &a = ex.automaton;
  for (SymbolId s = 0; s < ex.alphabet->size(); ++s) {
    const unsigned n = ex.alphabet->symbol(s).arity;
    SuperState tuple(n, 0);
    while (true) {
      EXPECT_NO_THROW(a.get_transition(s, tuple));
      std::size_t i = 0;
      for (; i < n; ++i) {
        if (++tuple[i] < a.state_count()) break;
        tuple[i] = 0;
      }
      if (i == n) break;
    }
  }
}

TEST(AutomatonTest, AcceptsSingleLeaf) {
  RunningExample ex;
  TreeAutomaton a(ex.alphabet, ex.manager);
  const StateId q0 = a.add_state("q0");
  a.set_final(q0);
  a.insert_transition(ex.a, {}, {q0});
  EXPECT_TRUE(a.accepts(Term{ex.a, {}}));
  EXPECT_FALSE(a.accepts(Term{ex.b0, {}}));
}

TEST(AutomatonTest, AcceptsNestedTerm) {
  // f(f(a,a), g(a)) reaches q1 through q0 at the leaves.
  auto alphabet = std::make_shared<Alphabet>();
  const SymbolId a = alphabet->add_symbol("a", 0);
  const SymbolId f = alphabet->add_symbol("f", 2);
  const SymbolId g = alphabet->add_symbol("g", 1);
  alphabet->freeze();
  auto m = std::make_shared<Manager>(alphabet->width());
  TreeAutomaton aut(alphabet, m);
  const StateId q0 = aut.add_state("q0"), q1 = aut.add_state("q1");
  aut.set_final(q1);
  aut.insert_transition(a, {}, {q0});
  aut.insert_transition(f, {q0, q0}, {q0});
  aut.insert_transition(g, {q0}, {q0});
  aut.insert_transition(f, {q0, q0}, {q0, q1});
  const Term leaf{a, {}};
  const Term t{f, {Term{f, {leaf, leaf}}, Term{g, {leaf}}}};
  EXPECT_EQ(aut.run(t), (StateSet{q0, q1}));
  EXPECT_TRUE(aut.accepts(t));
  EXPECT_FALSE(aut.accepts(Term{g, {leaf}}));
}

TEST(AutomatonTest, AcceptsRunningExampleTerm) {
  RunningExample ex;
  const Term t{ex.d, {Term{ex.c0, {}}}};
  EXPECT_TRUE(ex.automaton.accepts(t));
  EXPECT_FALSE(ex.automaton.accepts(Term{ex.c0, {}}));
  EXPECT_THROW(ex.automaton.accepts(Term{ex.d, {}}), std::invalid_argument);
}

TEST(AutomatonTest, SuperStatesByArity) {
  RunningExample ex;
  const TreeAutomaton &a = ex.automaton;
  EXPECT_EQ(a.super_states(2), (std::vector<SuperState>{{ex.q1, ex.q3}}));
  EXPECT_EQ(a.super_states(1), (std::vector<SuperState>{{ex.q2}, {ex.q3}}));
  EXPECT_EQ(a.super_states(0), (std::vector<SuperState>{{}}));
  EXPECT_TRUE(a.super_states(5).empty());
  EXPECT_EQ(a.index().size(), 4u);
  EXPECT_EQ(a.index().arities(), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(AutomatonTest, IndexDropsBottomRoots) {
  RunningExample ex;
  TreeAutomaton a(ex.alphabet, ex.manager);
  const StateId p = a.add_state("p"), q = a.add_state("q"), r = a.add_state("r");
  a.insert_transition(ex.b2, {p, q}, {r});
  a.set_root({p, q}, ex.manager->bottom());
  EXPECT_TRUE(a.super_states(2).empty());
  EXPECT_EQ(a.index().size(), 0u);
}

TEST(AutomatonTest, WideSuperStatesAreSorted) {
  auto alphabet = std::make_shared<Alphabet>();
  const SymbolId h = alphabet->add_symbol("h", 3);
  alphabet->add_symbol("a", 0);
  alphabet->freeze();
  auto m = std::make_shared<Manager>(alphabet->width());
  TreeAutomaton a(alphabet, m);
  for (const char *n : {"p", "q", "r"}) a.add_state(n);
  a.insert_transition(h, {2, 0, 1}, {0});
  a.insert_transition(h, {0, 2, 2}, {1});
  a.insert_transition(h, {0, 1, 2}, {2});
  EXPECT_EQ(a.super_states(3),
            (std::vector<SuperState>{{0, 1, 2}, {0, 2, 2}, {2, 0, 1}}));
  EXPECT_EQ(a.get_transition(h, {0, 2, 2}), StateSet{1});
}

TEST(AutomatonTest, Registry) {
  RunningExample ex;
  TreeAutomaton a(ex.alphabet, ex.manager);
  EXPECT_TRUE(a.finals().empty());
  EXPECT_TRUE(language_upto(to_explicit(a), 3).empty());
  const StateId p = a.add_state("p");
  EXPECT_THROW(a.add_state("p"), std::invalid_argument);
  EXPECT_THROW(a.set_final(7), std::out_of_range);
  EXPECT_EQ(a.find_state("p"), p);
  EXPECT_EQ(a.find_state("zz"), std::nullopt);
  EXPECT_EQ(a.state_name(p), "p");
}

TEST(AutomatonTest, SharedManagerRequired) {
  RunningExample ex;
  TreeAutomaton same(ex.alphabet, ex.manager);
  EXPECT_NO_THROW(ex.automaton.check_compatible(same));
  TreeAutomaton other(ex.alphabet, std::make_shared<Manager>(ex.alphabet->width()));
  EXPECT_THROW(ex.automaton.check_compatible(other), std::invalid_argument);
  EXPECT_THROW(TreeAutomaton(ex.alphabet, std::make_shared<Manager>(5)),
               std::invalid_argument);
  auto open = std::make_shared<Alphabet>();
  open->add_symbol("a", 0);
  EXPECT_THROW(TreeAutomaton(open, std::make_shared<Manager>(0)), std::invalid_argument);
}

TEST(AutomatonTest, DiagramSize) {
  RunningExample ex;
  EXPECT_GT(ex.automaton.diagram_size(), 0u);
  TreeAutomaton empty(ex.alphabet, ex.manager);
  EXPECT_LE(empty.diagram_size(), 1u);
}

TEST(AutomatonTest, AcceptsAgreesWithOracle) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 60; ++i) {
    auto alphabet = random_alphabet(rng);
    const ExplicitTA x = random_automaton(rng, alphabet);
    TreeAutomaton a = from_explicit(x, std::make_shared<Manager>(alphabet->width()));
    for (const Term &t : all_terms_upto(*alphabet, 3))
      ASSERT_EQ(a.accepts(t), explicit_accepts(x, t)) << t.to_string(*alphabet);
  }
}

}  // namespace
}  // namespace symta
