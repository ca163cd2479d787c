#include "ucs/analytic.hpp"
#include "ucs/mss.hpp"
#include "ucs/setfamily.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace ucs;

void BM_EnumerateSquare(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto g = sample_bipartite(k, k, EdgeProbability(0.5), Seed{1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(mss_stats(g));
}
BENCHMARK(BM_EnumerateSquare)->DenseRange(8, 20, 4);

void BM_EnumerateWideRight(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = sample_bipartite(3, n, EdgeProbability(0.5), Seed{2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(mss_stats(g));
}
BENCHMARK(BM_EnumerateWideRight)->RangeMultiplier(8)->Range(64, 32768);

void BM_BruteForce(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto g = sample_bipartite(k, k, EdgeProbability(0.5), Seed{3, 0});
  for (auto _ : state) benchmark::DoNotOptimize(mss_stats_brute_force(g));
}
BENCHMARK(BM_BruteForce)->DenseRange(4, 10, 2);

void BM_Sample(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::uint64_t t = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_bipartite(k, k, EdgeProbability(0.5), Seed{4, t++}));
}
BENCHMARK(BM_Sample)->Range(16, 1024);

void BM_StabExact(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(analytic::expected_stab_at_least_exact(m, m, Rational(1, 2), 2, 2));
}
BENCHMARK(BM_StabExact)->Arg(10)->Arg(30);

void BM_StabDouble(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(analytic::expected_stab_at_least(m, m, EdgeProbability(0.5), 2, 2));
}
BENCHMARK(BM_StabDouble)->Arg(10)->Arg(30)->Arg(300);

void BM_UnionClosure(benchmark::State& state) {
  const auto g = sample_family(static_cast<unsigned>(state.range(0)), 8, Seed{5, 0});
  for (auto _ : state) benchmark::DoNotOptimize(union_closure(g));
}
BENCHMARK(BM_UnionClosure)->Arg(10)->Arg(16)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
