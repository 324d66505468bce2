#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "dot_grammar.hpp"
#include "fixtures.hpp"
#include "symta/io.hpp"
#include "symta/oracle.hpp"

namespace symta {
namespace {

using testing::DotChecker;
using testing::RelabelExample;
using testing::RunningExample;

// Rules grouped by target state.
const char *kRunningExample = R"(% running example
Ops a:0 b:0 b:2 c:0 c:1 d:1
Automaton example
States q1 q2 q3
Final States q3
Transitions
b -> q1
b(q1,q3) -> q1
c(q3) -> q1
b() -> q2
c -> q2
b(q1, q3) -> q2
c(q3) -> q2
d(q2) -> q3
)";

std::vector<std::string> lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::size_t transition_lines(const std::string &text) {
  const auto all = lines(text);
  const auto start = std::find(all.begin(), all.end(), "Transitions");
  return start == all.end() ? 0 : static_cast<std::size_t>(all.end() - start - 1);
}

std::size_t error_line(const std::string &text) {
  try {
    parse_timbuk(text);
  } catch (const ParseError &e) {
    return e.line();
  }
  return 0;
}

TEST(ParseTimbukTest, MinimalDocument) {
  TreeAutomaton a = parse_timbuk("Ops a:0\nAutomaton m\nStates q0\nFinal States q0\n"
                                 "Transitions\na -> q0\n");
  EXPECT_EQ(a.state_count(), 1u);
  EXPECT_EQ(a.name(), "m");
  EXPECT_TRUE(a.accepts(Term{0, {}}));
}

TEST(ParseTimbukTest, RunningExampleRowByRow) {
  RunningExample ex;
  TreeAutomaton parsed = parse_timbuk(kRunningExample);
  EXPECT_EQ(to_explicit(parsed).rules, to_explicit(ex.automaton).rules);
  EXPECT_EQ(parsed.finals(), ex.automaton.finals());
  for (SymbolId s = 0; s < ex.alphabet->size(); ++s)
    for (std::size_t n = 0; n <= 2; ++n)
      for (const SuperState &source : ex.automaton.super_states(n))
        if (ex.alphabet->symbol(s).arity == n)
          EXPECT_EQ(parsed.get_transition(s, source), ex.automaton.get_transition(s, source));
}

TEST(ParseTimbukTest, LineOrderDoesNotMatter) {
  std::vector<std::string> rules = {"b -> q1",        "b(q1,q3) -> q1", "c(q3) -> q1",
                                    "b -> q2",        "c -> q2",        "b(q1,q3) -> q2",
                                    "c(q3) -> q2",    "d(q2) -> q3"};
  const std::string head =
      "Ops a:0 b:0 b:2 c:0 c:1 d:1\nAutomaton x\nStates q1 q2 q3\nFinal States q3\nTransitions\n";
  std::string forward = head, backward = head;
  for (const auto &r : rules) forward += r + "\n";
  for (auto it = rules.rbegin(); it != rules.rend(); ++it) backward += *it + "\n";
  EXPECT_EQ(write_timbuk(parse_timbuk(forward)), write_timbuk(parse_timbuk(backward)));
}

TEST(ParseTimbukTest, ArityErrorReportsLine) {
  const std::string text =
      "Ops f:2 a:0\nAutomaton x\nStates q0 q1\nFinal States q1\nTransitions\n"
      "a -> q0\nf(q0) -> q1\n";
  EXPECT_EQ(error_line(text), 7u);
  EXPECT_THROW(parse_timbuk(text), ParseError);
}

TEST(ParseTimbukTest, UndeclaredNames) {
  EXPECT_EQ(error_line("Ops a:0\nAutomaton x\nStates q\nFinal States q\nTransitions\n"
                       "b -> q\n"),
            6u);
  EXPECT_EQ(error_line("Ops a:0\nAutomaton x\nStates q\nFinal States q\nTransitions\n"
                       "a -> r\n"),
            6u);
  EXPECT_EQ(error_line("Ops a:0\nAutomaton x\nStates q\nFinal States r\nTransitions\n"), 4u);
}

TEST(ParseTimbukTest, SyntaxErrorsReportLine) {
  EXPECT_EQ(error_line("Ops a:0\nAutomaton x\nStates q\nFinal States q\nTransitions\n"
                       "a q\n"),
            6u);
  EXPECT_EQ(error_line("Ops a:x\n"), 1u);
  EXPECT_EQ(error_line("Ops a:0\nStates q\n"), 2u);
  EXPECT_EQ(error_line("Ops a:0\nAutomaton x\nStates q\nFinal States q\nTransitions\n"
                       "a(q -> q\n"),
            6u);
}

TEST(ParseTimbukTest, DialectDetails) {
  // CRLF, comments, state arity suffixes and a() for nullary symbols.
  TreeAutomaton a = parse_timbuk(
      "Ops a:0 f:1 % symbols\r\nAutomaton x\r\nStates q:0 r:1\r\nFinal States r\r\n"
      "Transitions\r\na() -> q\r\nf(q) -> r % last\r\n");
  EXPECT_EQ(a.state_count(), 2u);
  EXPECT_EQ(a.state_name(0), "q");
  EXPECT_TRUE(a.accepts(Term{1, {Term{0, {}}}}));
}

TEST(WriteTimbukTest, RunningExampleExpandsTargets) {
  RunningExample ex;
  const std::string text = write_timbuk(ex.automaton);
  EXPECT_EQ(transition_lines(text), 8u);
  const auto all = lines(text);
  ASSERT_GE(all.size(), 5u);
  EXPECT_EQ(all[0], "Ops a:0 b:0 b:2 c:0 c:1 d:1");
  EXPECT_EQ(all[1], "Automaton example");
  EXPECT_EQ(all[2], "States q1 q2 q3");
  EXPECT_EQ(all[3], "Final States q3");
  EXPECT_NE(std::find(all.begin(), all.end(), "b -> q1"), all.end());
  EXPECT_NE(std::find(all.begin(), all.end(), "b(q1,q3) -> q2"), all.end());
}

TEST(WriteTimbukTest, EmptyFinalSet) {
  RunningExample ex;
  TreeAutomaton a(ex.alphabet, ex.manager, "none");
  a.add_state("q");
  const auto all = lines(write_timbuk(a));
  EXPECT_NE(std::find(all.begin(), all.end(), "Final States"), all.end());
}

TEST(WriteTimbukTest, RoundTripIsomorphic) {
  RunningExample ex;
  const std::string once = write_timbuk(ex.automaton);
  TreeAutomaton again = parse_timbuk(once);
  EXPECT_EQ(write_timbuk(again), once);
  EXPECT_EQ(to_explicit(again).rules, to_explicit(ex.automaton).rules);
}

TEST(WriteTimbukTest, RandomRoundTrips) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    auto alphabet = random_alphabet(rng);
    const ExplicitTA x = random_automaton(rng, alphabet);
    TreeAutomaton a = from_explicit(x, std::make_shared<Manager>(alphabet->width()));
    const std::string text = write_timbuk(a);
    TreeAutomaton b = parse_timbuk(text);
    EXPECT_EQ(write_timbuk(b), text) << seed;
    EXPECT_EQ(to_explicit(b).rules, x.rules) << seed;
    EXPECT_EQ(to_explicit(b).finals, x.finals) << seed;
  }
}

TEST(ExtractTest, ConstantRoot) {
  Manager m(2);
  const auto cubes = extract_cubes(m, m.constant(StateSet{4}), {Bank::X});
  ASSERT_EQ(cubes.size(), 1u);
  EXPECT_EQ(cubes[0].first.to_string(), "XX");
  EXPECT_EQ(cubes[0].second, StateSet{4});
  EXPECT_TRUE(extract_cubes(m, m.bottom(), {Bank::X}).empty());
}

TEST(ExtractTest, RunningExampleInitialRoot) {
  RunningExample ex;
  const auto cubes = extract_cubes(*ex.manager, ex.automaton.root({}), {Bank::X});
  ASSERT_EQ(cubes.size(), 2u);
  EXPECT_EQ(cubes[0].first.to_string(), "01");
  EXPECT_EQ(cubes[0].second, (StateSet{ex.q1, ex.q2}));
  EXPECT_EQ(cubes[1].first.to_string(), "10");
  EXPECT_EQ(cubes[1].second, StateSet{ex.q2});
}

TEST(ExtractTest, WrongBankThrows) {
  Manager m(1);
  NodeRef f = m.create_pair_mtbdd(SymbolAssignment::parse("01"), m.intern_leaf({0}));
  EXPECT_THROW(extract_cubes(m, f, {Bank::X}), std::invalid_argument);
}

TEST(ExtractTest, ReinsertionReproducesTransitions) {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    std::mt19937_64 rng(seed);
    auto alphabet = random_alphabet(rng);
    auto m = std::make_shared<Manager>(alphabet->width());
    TreeAutomaton a = from_explicit(random_automaton(rng, alphabet), m);
    TreeAutomaton b(alphabet, m);
    for (StateId q = 0; q < a.state_count(); ++q) b.add_state(a.state_name(q));
    for (const TransitionCube &t : extract_transitions(a))
      b.set_root(t.source,
                 m->apply(b.root(t.source), m->create_mtbdd(t.cube, m->intern_leaf(t.targets)),
                          [](const StateSet &x, const StateSet &y) { return set_union(x, y); }));
    for (SymbolId s = 0; s < alphabet->size(); ++s)
      for (const SuperState &src : a.super_states(alphabet->symbol(s).arity))
        EXPECT_EQ(b.get_transition(s, src), a.get_transition(s, src)) << seed;
    EXPECT_EQ(to_explicit(b).rules, to_explicit(a).rules) << seed;
  }
}

TEST(DotTest, SingleRule) {
  RunningExample ex;
  TreeAutomaton a(ex.alphabet, ex.manager, "one");
  a.insert_transition(ex.a, {}, {a.add_state("q0")});
  const std::string dot = to_dot(a);
  EXPECT_EQ(DotChecker::check(dot), std::nullopt) << dot;
  EXPECT_NE(dot.find("sp0 [shape=record, label=\"\"]"), std::string::npos);
  EXPECT_NE(dot.find("sp0 -> q0 [label=\"a\"]"), std::string::npos);
}

TEST(DotTest, RunningExampleBinaryRule) {
  RunningExample ex;
  const std::string dot = to_dot(ex.automaton);
  EXPECT_EQ(DotChecker::check(dot), std::nullopt) << dot;
  EXPECT_NE(dot.find("q2 [label=\"q3\", shape=doublecircle]"), std::string::npos);
  // Super-state (q1,q3) is the fourth stored entry.
  EXPECT_NE(dot.find("q0 -> sp3:p1 [label=\"1\"]"), std::string::npos);
  EXPECT_NE(dot.find("q2 -> sp3:p2 [label=\"2\"]"), std::string::npos);
  EXPECT_NE(dot.find("sp3 -> q0 [label=\"b\"]"), std::string::npos);
  EXPECT_NE(dot.find("sp3 -> q1 [label=\"b\"]"), std::string::npos);
  EXPECT_NE(dot.find("sp0 -> q1 [label=\"b,c\"]"), std::string::npos);
}

TEST(DotTest, CheckerRejectsMalformedInput) {
  EXPECT_EQ(DotChecker::check("digraph { a -> b; }"), std::nullopt);
  EXPECT_EQ(DotChecker::check("graph g { a -- b [x=1, y=\"2\"]; subgraph s { c } }"),
            std::nullopt);
  EXPECT_NE(DotChecker::check("digraph { a -- b }"), std::nullopt);
  EXPECT_NE(DotChecker::check("digraph { a -> }"), std::nullopt);
  EXPECT_NE(DotChecker::check("digraph { a [label=\"x] }"), std::nullopt);
  EXPECT_NE(DotChecker::check("digraph { a [label] }"), std::nullopt);
}

TEST(TransducerIoTest, IdentityRoundTrip) {
  RunningExample ex;
  Transducer t = testing::identity_transducer(ex.alphabet, ex.manager);
  const std::string text = write_timbuk(t);
  EXPECT_NE(text.find("Transducer identity"), std::string::npos);
  EXPECT_NE(text.find("d(q) / d -> q"), std::string::npos);
  Transducer back = parse_timbuk_transducer(text);
  EXPECT_EQ(write_timbuk(back), text);
  EXPECT_EQ(to_explicit(back).rules, to_explicit(t).rules);
}

TEST(TransducerIoTest, WorkedExampleRoundTrip) {
  RelabelExample ex;
  Transducer back = parse_timbuk_transducer(write_timbuk(ex.transducer));
  const auto expected = extract_transitions(ex.transducer);
  const auto actual = extract_transitions(back);
  ASSERT_EQ(actual.size(), expected.size());
  for (std::size_t i = 0; i < actual.size(); ++i) {
    EXPECT_EQ(actual[i].source, expected[i].source);
    EXPECT_EQ(actual[i].cube, expected[i].cube);
    EXPECT_EQ(actual[i].targets, expected[i].targets);
  }
}

TEST(TransducerIoTest, ArityMismatchReportsLine) {
  const std::string text =
      "Ops a:0 f:1 g:2\nTransducer t\nStates q0 q1\nFinal States q1\nTransitions\n"
      "a / a -> q0\nf(q0) / g -> q1\n";
  try {
    parse_timbuk_transducer(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 7u);
  }
}

TEST(TransducerIoTest, KindMismatch) {
  EXPECT_THROW(parse_timbuk_transducer(kRunningExample), ParseError);
  EXPECT_THROW(parse_timbuk("Ops a:0\nTransducer t\nStates q\nFinal States q\n"
                            "Transitions\na / a -> q\n"),
               ParseError);
}

TEST(ParseTermTest, WhitespaceInsensitive) {
  RunningExample ex;
  const Term t = parse_term(" b ( c , d( c() ) ) ", *ex.alphabet);
  EXPECT_EQ(t.to_string(*ex.alphabet), "b(c,d(c))");
  EXPECT_EQ(t.symbol, ex.b2);
  EXPECT_EQ(parse_term("b", *ex.alphabet).symbol, ex.b0);
}

TEST(ParseTermTest, Errors) {
  RunningExample ex;
  EXPECT_THROW(parse_term("zz", *ex.alphabet), ParseError);
  EXPECT_THROW(parse_term("d(c", *ex.alphabet), ParseError);
  EXPECT_THROW(parse_term("d(c,c)", *ex.alphabet), ParseError);
  EXPECT_THROW(parse_term("c c", *ex.alphabet), ParseError);
}

}  // namespace
}  // namespace symta
