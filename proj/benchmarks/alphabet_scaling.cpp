// Union and simulation over alphabets of 2^k symbols with one rule per symbol.

#include <benchmark/benchmark.h>

#include <memory>
#include <string>

#include "symta/ops.hpp"

namespace {

using namespace symta;

struct Fixture {
  std::shared_ptr<Alphabet> alphabet = std::make_shared<Alphabet>();
  std::shared_ptr<Manager> manager;
  std::unique_ptr<TreeAutomaton> a, b;

  explicit Fixture(unsigned exponent) {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << exponent); ++i)
      alphabet->add_symbol("f" + std::to_string(i), static_cast<unsigned>(i & 1));
    alphabet->freeze();
    manager = std::make_shared<Manager>(alphabet->width());
    a = build("A");
    b = build("B");
  }

  std::unique_ptr<TreeAutomaton> build(const std::string &name) {
    auto t = std::make_unique<TreeAutomaton>(alphabet, manager, name);
    const StateId p0 = t->add_state("p0"), p1 = t->add_state("p1");
    t->set_final(p1);
    for (SymbolId f = 0; f < alphabet->size(); ++f) {
      if (alphabet->symbol(f).arity == 0)
        t->insert_transition(f, {}, {p0});
      else
        t->insert_transition(f, {p0}, {p1});
    }
    return t;
  }
};

void BM_Union(benchmark::State &state) {
  Fixture fx(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(union_of(*fx.a, *fx.b));
  state.counters["symbols"] = static_cast<double>(fx.alphabet->size());
}

void BM_Simulation(benchmark::State &state) {
  Fixture fx(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(downward_simulation(*fx.a));
  state.counters["symbols"] = static_cast<double>(fx.alphabet->size());
}

void BM_Minimise(benchmark::State &state) {
  Fixture fx(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(minimise(*fx.a));
  state.counters["symbols"] = static_cast<double>(fx.alphabet->size());
}

BENCHMARK(BM_Union)->DenseRange(4, 14, 2);
BENCHMARK(BM_Simulation)->DenseRange(4, 14, 2);
BENCHMARK(BM_Minimise)->DenseRange(4, 14, 2);

}  // namespace
BENCHMARK_MAIN();
