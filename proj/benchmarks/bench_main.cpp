#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "ssgh/canonical.hpp"
#include "ssgh/complex.hpp"
#include "ssgh/homology.hpp"

using namespace ssgh;

static void BM_CanonicalizeTwoThetas(benchmark::State& state) {
  RibbonGraph g = fixtures::two_thetas();
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize(g));
}
BENCHMARK(BM_CanonicalizeTwoThetas);

static void BM_Catalog(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(build_catalog(g, n));
}
BENCHMARK(BM_Catalog)->Args({0, 3})->Args({1, 1})->Args({0, 4})->Unit(benchmark::kMillisecond);

static void BM_BoundaryMatrices(benchmark::State& state) {
  Catalog cat = build_catalog(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(boundary_matrices(cat));
}
BENCHMARK(BM_BoundaryMatrices)->Args({0, 3})->Args({0, 4})->Unit(benchmark::kMillisecond);

static void BM_SmithNormalForm(benchmark::State& state) {
  static const std::vector<BoundaryMatrix> ms = boundary_matrices(build_catalog(0, 4));
  const BoundaryMatrix& m = ms[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
  state.counters["entries"] = static_cast<double>(m.entries.size());
}
BENCHMARK(BM_SmithNormalForm)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
