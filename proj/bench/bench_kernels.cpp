// Serial reference versus OpenMP grid kernels on the largest lattice
// (three sites, dimension 24) over the default 2001-point grid.

#include <benchmark/benchmark.h>

#include "hopspin/kernels.hpp"

namespace {

using namespace hopspin;

struct Fixture {
  BasisLayout layout{3};
  ComplexMatrix h = build_hamiltonian(ModelSpec::heisenberg(3, 10.0));
  SpectralPropagator propagator{hermitian_eigensystem(h),
                                encode_state(layout, 0, Spin::up, StaticPreset::down_down)};
  ObservableEvaluator evaluator{layout, h};
  std::vector<double> times = TimeGrid{}.times();
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_EvolveSerial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(reference::evolve_grid(f.propagator, f.times));
}

void BM_EvolveParallel(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::evolve_grid(f.propagator, f.times));
  state.counters["threads"] = kernels::max_threads();
}

void BM_ObserveSerial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(reference::observe_grid(f.propagator, f.evaluator, f.times));
}

void BM_ObserveParallel(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::observe_grid(f.propagator, f.evaluator, f.times));
  state.counters["threads"] = kernels::max_threads();
}

void BM_Eigensolve(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigensystem(f.h));
}

}  // namespace

BENCHMARK(BM_EvolveSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EvolveParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ObserveSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ObserveParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Eigensolve)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
