// Serial vs OpenMP for the data-parallel loops. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include "qfid/ensembles.hpp"
#include "qfid/kernels.hpp"
#include "qfid/suite.hpp"

using namespace qfid;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void BM_SweepGrid(benchmark::State& st) {
  const SweepConfig cfg = SweepConfig::uniform(FixedState::mixed, 101, 101);
  for (auto _ : st) benchmark::DoNotOptimize(sweep_grid(cfg, exec_of(st)));
  st.SetItemsProcessed(st.iterations() * 101 * 101);
}
BENCHMARK(BM_SweepGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_FidelityBatch(benchmark::State& st) {
  Rng rng(1);
  std::vector<StatePair> pairs;
  for (int i = 0; i < 256; ++i) pairs.emplace_back(random_density(6, 6, rng), random_density(6, 3, rng));
  for (auto _ : st) benchmark::DoNotOptimize(fidelity_batch(pairs, exec_of(st)));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(pairs.size()));
}
BENCHMARK(BM_FidelityBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Suite(benchmark::State& st) {
  SuiteOptions o;
  o.trials = 20;
  o.sdp_trials = 20;
  o.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(run_suite(o));
}
BENCHMARK(BM_Suite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
