#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <vector>

#include "uavcache/bandit.hpp"
#include "uavcache/catalog.hpp"
#include "uavcache/engine.hpp"
#include "uavcache/metrics.hpp"

namespace {

using namespace uavcache;

std::vector<double> random_scores(std::size_t n) {
  std::mt19937_64 gen(n);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> s(n);
  for (auto& x : s) x = u(gen);
  return s;
}

std::vector<ContentId> random_sequence(std::size_t n, std::uint64_t seed) {
  std::vector<ContentId> v = identity_ranking(n);
  std::shuffle(v.begin(), v.end(), std::mt19937_64(seed));
  return v;
}

void BM_SelectTopK(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto scores = random_scores(n);
  for (auto _ : state) benchmark::DoNotOptimize(select_top_k(scores, n / 10));
}
BENCHMARK(BM_SelectTopK)->Arg(500)->Arg(2000)->Arg(20000);

void BM_JaroWinkler(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_sequence(n, 1);
  const auto b = random_sequence(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(jaro_winkler(a, b));
}
BENCHMARK(BM_JaroWinkler)->Arg(60)->Arg(250);

void BM_SmithWaterman(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_sequence(n, 3);
  const auto b = random_sequence(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(smith_waterman(a, b));
}
BENCHMARK(BM_SmithWaterman)->Arg(200)->Arg(2000);

void BM_DeskScaleRun(benchmark::State& state) {
  ScenarioConfig c;
  c.n_contents = 500;
  c.cache_anchor = 50;
  c.cache_ferry = 10;
  c.epochs = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t requests = 0;
  for (auto _ : state) {
    Simulation sim(c);
    benchmark::DoNotOptimize(sim.run());
    requests += sim.totals().requests;
  }
  state.counters["requests/s"] = benchmark::Counter(static_cast<double>(requests), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_DeskScaleRun)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
