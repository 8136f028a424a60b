#include <benchmark/benchmark.h>

#include "mpmc/experiments.hpp"

namespace {

// Simulated controller cycles per second for one sweep point.
void BM_PeakPoint(benchmark::State& state) {
  mpmc::harness::ExperimentSpec spec;
  spec.ports = {static_cast<std::uint32_t>(state.range(0))};
  spec.burst_counts = {static_cast<std::uint32_t>(state.range(1))};
  spec.cycles = 50'000;
  spec.warmup = 1'000;
  const auto sim = mpmc::harness::build_point(spec, mpmc::harness::points(spec).at(0));
  for (auto _ : state) benchmark::DoNotOptimize(mpmc::harness::run_simulation(sim));
  state.counters["cycles/s"] = benchmark::Counter(
      static_cast<double>(state.iterations() * (spec.cycles + spec.warmup)),
      benchmark::Counter::kIsRate);
}
BENCHMARK(BM_PeakPoint)->Args({4, 4})->Args({4, 64})->Args({32, 64})->Unit(benchmark::kMillisecond);

}  // namespace
