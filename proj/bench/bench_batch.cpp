// Serial reference loop vs the OpenMP batch driver, per algorithm.

#include <benchmark/benchmark.h>

#include "fairdiv/batch.hpp"

namespace {

fairdiv::BatchSpec spec_for(int alg, bool checked) {
  fairdiv::BatchSpec spec;
  spec.algorithm = fairdiv::all_algorithms()[static_cast<std::size_t>(alg)];
  spec.count = 64;
  spec.seed = 1;
  spec.run.check_invariants = checked;
  return spec;
}

void label(benchmark::State& state) {
  state.SetLabel(std::string(fairdiv::algorithm_name(fairdiv::all_algorithms()[static_cast<std::size_t>(state.range(0))])) +
                 (state.range(1) ? " checked" : ""));
  state.SetItemsProcessed(state.iterations() * 64);
}

void BM_Serial(benchmark::State& state) {
  const auto spec = spec_for(static_cast<int>(state.range(0)), state.range(1) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(fairdiv::run_batch_serial(spec));
  label(state);
}

void BM_Parallel(benchmark::State& state) {
  const auto spec = spec_for(static_cast<int>(state.range(0)), state.range(1) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(fairdiv::run_batch_parallel(spec));
  label(state);
}

void BM_SingleRun(benchmark::State& state) {
  const auto spec = spec_for(static_cast<int>(state.range(0)), false);
  const fairdiv::Instance inst = fairdiv::generate(fairdiv::instance_spec(spec, 0));
  for (auto _ : state) benchmark::DoNotOptimize(fairdiv::run_algorithm(inst, spec.algorithm, spec.run));
  state.SetLabel(std::string(fairdiv::algorithm_name(spec.algorithm)));
}

}  // namespace

BENCHMARK(BM_Serial)->ArgsProduct({{0, 1, 2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->ArgsProduct({{0, 1, 2, 3}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SingleRun)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
