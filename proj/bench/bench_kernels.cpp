#include <benchmark/benchmark.h>

#include <vector>

#include "stablevar/batch.hpp"
#include "stablevar/estimator.hpp"

namespace {

using stablevar::Execution;

const stablevar::BlockedSeries& blocks() {
  static const stablevar::BlockedSeries b = stablevar::block_split(
      stablevar::simulate_blocks(0.0, stablevar::Drift::cosine(), {0.75, 6.35}, 200, 1.0, 200, 4, 1), 200);
  return b;
}

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_KsSurface(benchmark::State& state) {
  const stablevar::SearchGrid grid;
  for (auto _ : state) benchmark::DoNotOptimize(stablevar::ks_surface(blocks(), grid, exec_of(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_KsSurface)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_KsSurfaceCellByCell(benchmark::State& state) {
  stablevar::SearchGrid grid;
  grid.p_step = 0.2;
  grid.c_step = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(stablevar::reference::ks_surface(blocks(), grid));
}
BENCHMARK(BM_KsSurfaceCellByCell)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_BlockStatistics(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(stablevar::block_statistics(blocks(), 1.5, exec_of(state)));
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_BlockStatistics)->Arg(0)->Arg(1)->UseRealTime();

void BM_LevyStatistics(benchmark::State& state) {
  const stablevar::StableParams law(1.5, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stablevar::levy_statistics(law, 10000, 1.0, 2.0, 0.0, 64, 1, {}, exec_of(state)));
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_LevyStatistics)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SimulateBlocks(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(stablevar::simulate_blocks(0.0, stablevar::Drift::cosine(), {0.75, 6.35}, 200, 1.0,
                                                        200, 16, 1, exec_of(state)));
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_SimulateBlocks)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
