#include <benchmark/benchmark.h>

#include <random>

#include "latidx/catalog.hpp"
#include "latidx/index_engine.hpp"
#include "latidx/invariants.hpp"

using namespace latidx;

namespace {

void BM_IndexSystemD6(benchmark::State& state) {
  MinimalVectorSet mv = minimal_vectors(root_lattice(RootFamily::D, 6));
  EngineOptions opts{true, static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(index_system(mv, opts));
}
BENCHMARK(BM_IndexSystemD6)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_IndexSystemEutactic(benchmark::State& state) {
  MinimalVectorSet mv = minimal_vectors(named_matrix("eutactic-path-7"));
  for (auto _ : state) benchmark::DoNotOptimize(index_system(mv, {true, 1}));
  state.counters["subsets"] = 3365856;  // binom(32, 7)
}
BENCHMARK(BM_IndexSystemEutactic)->Unit(benchmark::kMillisecond);

void BM_IndexSystemM32(benchmark::State& state) {
  MinimalVectorSet mv = minimal_vectors(named_matrix("M32"));
  for (auto _ : state) benchmark::DoNotOptimize(index_system(mv, {false, 1}));
}
BENCHMARK(BM_IndexSystemM32)->Unit(benchmark::kMillisecond);

void BM_MinimalVectorsW75(benchmark::State& state) {
  GramMatrix g = named_matrix("W75");
  for (auto _ : state) benchmark::DoNotOptimize(minimal_vectors(g));
}
BENCHMARK(BM_MinimalVectorsW75)->Unit(benchmark::kMillisecond);

void BM_MinimalVectorsE8(benchmark::State& state) {
  GramMatrix g = root_lattice(RootFamily::E, 8);
  for (auto _ : state) benchmark::DoNotOptimize(minimal_vectors(g));
}
BENCHMARK(BM_MinimalVectorsE8)->Unit(benchmark::kMillisecond);

void BM_SmithForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> dist(-50, 50);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_form(m));
}
BENCHMARK(BM_SmithForm)->Arg(4)->Arg(8)->Arg(16);

void BM_PerfectionRankW75(benchmark::State& state) {
  MinimalVectorSet mv = minimal_vectors(named_matrix("W75"));
  for (auto _ : state) benchmark::DoNotOptimize(perfection_rank(mv));
}
BENCHMARK(BM_PerfectionRankW75);

}  // namespace

BENCHMARK_MAIN();
