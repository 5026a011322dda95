// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "levymart/martingale_engine.hpp"
#include "levymart/moment_engine.hpp"
#include "levymart/reversed_analyzer.hpp"
#include "levymart/simulator.hpp"

using namespace levymart;

namespace {

CumulantSpec bench_spec(int order) {
  std::vector<Rational> c;
  for (int i = 1; i <= order; ++i) c.emplace_back((i % 5) - 2, i % 3 + 1);
  c[1] = Rational(3, 2);
  return CumulantSpec(c);
}

void BM_Moments(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CumulantSpec spec = bench_spec(n);
  for (auto _ : state) benchmark::DoNotOptimize(moments(spec, n));
}
BENCHMARK(BM_Moments)->Arg(8)->Arg(12)->Arg(16);

void BM_CrossMoment(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CumulantSpec spec = bench_spec(2 * n);
  for (auto _ : state) benchmark::DoNotOptimize(cross_moment(spec, n, n));
}
BENCHMARK(BM_CrossMoment)->Arg(4)->Arg(6)->Arg(8);

void BM_Closure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cumulant_closure(Rational(1), Rational(1), Rational(2), n));
}
BENCHMARK(BM_Closure)->Arg(12)->Arg(24);

void BM_Simulate(benchmark::State& state) {
  const KolmogorovMeasure m(Rational(1, 2), {Atom{Rational(1), Rational(1)}}, Rational(0));
  const auto paths = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_paths(m, {1, 2, 4}, paths, 7, 1));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * paths));
}
BENCHMARK(BM_Simulate)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
