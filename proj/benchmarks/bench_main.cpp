#include <benchmark/benchmark.h>

#include "sumset/kernel.hpp"
#include "sumset/khovanskii.hpp"
#include "sumset/polytope.hpp"
#include "sumset/structure.hpp"
#include "sumset/sumset.hpp"

using namespace sumset;

namespace {

const PointConfig& hexagon() {
  static const auto a = normalize_config(
      PointConfig::from_ints(2, {{0, 0}, {2, 0}, {3, 2}, {2, 4}, {0, 4}, {-1, 2}, {1, 2}}));
  return a;
}

const PointConfig& tilted() {
  static const auto a = normalize_config(PointConfig::from_ints(3, {{0, 0, 0}, {2, 0, 0}, {0, 2, 1}, {1, 1, 2}, {1, 0, 1}}));
  return a;
}

void BM_SumsetGrid(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) {
    SumsetGrid grid(hexagon(), n);
    for (std::int64_t k = 0; k < n; ++k) grid.advance();
    benchmark::DoNotOptimize(grid.cardinality());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SumsetGrid)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_SemigroupOracle(benchmark::State& state) {
  const auto& a = tilted();
  const auto n = state.range(0);
  for (auto _ : state) {
    SemigroupOracle oracle(a);
    std::size_t members = 0;
    for (std::int64_t x = 0; x <= n; ++x)
      for (std::int64_t y = 0; y <= n; ++y) members += oracle.contains({x, y, n});
    benchmark::DoNotOptimize(members);
  }
}
BENCHMARK(BM_SemigroupOracle)->Arg(8)->Arg(16)->Arg(32);

void BM_Circuits(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(circuits(hexagon()));
}
BENCHMARK(BM_Circuits);

void BM_MinimalUseless(benchmark::State& state) {
  ScanCaps caps;
  caps.count_certificate = false;
  caps.max_weight = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(minimal_useless(hexagon(), caps));
}
BENCHMARK(BM_MinimalUseless)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_StructureThreshold(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(structure_threshold_empirical(tilted()));
}
BENCHMARK(BM_StructureThreshold)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
