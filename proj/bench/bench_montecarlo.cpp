#include <benchmark/benchmark.h>

#include "mmwpt/montecarlo.hpp"

namespace {

mmwpt::SystemParams defaults() {
  mmwpt::SystemParams p;
  p.bs_density = 1e-4;
  return p;
}

void BM_HarvestSerial(benchmark::State& state) {
  const auto p = defaults();
  mmwpt::mc::TrialBatchSpec batch;
  batch.n_trials = state.range(0);
  batch.parallel = false;
  for (auto _ : state) {
    auto rep = mmwpt::mc::mc_harvest(p, batch);
    benchmark::DoNotOptimize(rep.total_w);
  }
  state.SetItemsProcessed(state.iterations() * batch.n_trials);
}

void BM_HarvestParallel(benchmark::State& state) {
  const auto p = defaults();
  mmwpt::mc::TrialBatchSpec batch;
  batch.n_trials = state.range(0);
  batch.parallel = true;
  for (auto _ : state) {
    auto rep = mmwpt::mc::mc_harvest(p, batch);
    benchmark::DoNotOptimize(rep.total_w);
  }
  state.SetItemsProcessed(state.iterations() * batch.n_trials);
}

void BM_UplinkSerial(benchmark::State& state) {
  const auto p = defaults();
  mmwpt::mc::TrialBatchSpec batch;
  batch.n_trials = state.range(0);
  batch.parallel = false;
  for (auto _ : state) {
    auto cdfs = mmwpt::mc::mc_uplink(p, 1.0, batch);
    benchmark::DoNotOptimize(cdfs.first.size());
  }
  state.SetItemsProcessed(state.iterations() * batch.n_trials);
}

void BM_UplinkParallel(benchmark::State& state) {
  const auto p = defaults();
  mmwpt::mc::TrialBatchSpec batch;
  batch.n_trials = state.range(0);
  batch.parallel = true;
  for (auto _ : state) {
    auto cdfs = mmwpt::mc::mc_uplink(p, 1.0, batch);
    benchmark::DoNotOptimize(cdfs.first.size());
  }
  state.SetItemsProcessed(state.iterations() * batch.n_trials);
}

}  // namespace

BENCHMARK(BM_HarvestSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HarvestParallel)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UplinkSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UplinkParallel)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
