#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "hartman/hartman.hpp"

using namespace hartman;

namespace {

const PhysicalConstants kUnits{};

void BM_Amplitudes(benchmark::State& state) {
  const auto pot = SquarePotential::from_width(5.0, 2.0);
  double k = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(amplitudes(pot, kUnits, k));
    k = k < 20.0 ? k * 1.001 : 0.01;
  }
}
BENCHMARK(BM_Amplitudes);

void BM_Evaluate(benchmark::State& state) {
  const auto pot = SquarePotential::from_width(-3.0, 2.0);
  double k = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(pot, kUnits, k));
    k = k < 20.0 ? k * 1.001 : 0.01;
  }
}
BENCHMARK(BM_Evaluate);

void BM_PhaseTable(benchmark::State& state) {
  const auto pot = SquarePotential::from_width(-8.0, 2.0);
  PhaseTableOptions opts;
  opts.samples = static_cast<std::size_t>(state.range(0));
  const double k_max = default_anchor_k(pot, kUnits);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_phase_table(pot, kUnits, 1e-4, k_max, opts));
  }
}
BENCHMARK(BM_PhaseTable)->Arg(512)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_BoundStates(benchmark::State& state) {
  const auto pot = SquarePotential{-50.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_bound_states(pot, kUnits));
  }
}
BENCHMARK(BM_BoundStates);

void BM_MeanExitTime(benchmark::State& state) {
  const GaussianPacketSpec spec{std::numbers::pi / 8.0, 1.0, -41.0};
  const auto pot = SquarePotential::from_width(-0.3, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mean_exit_time(spec, pot, kUnits));
  }
}
BENCHMARK(BM_MeanExitTime)->Unit(benchmark::kMillisecond);

void BM_FluxOracle(benchmark::State& state) {
  const GaussianPacketSpec spec{1.5, 0.25, -20.0};
  const auto pot = SquarePotential::from_width(0.8, 2.0);
  const TimeWindow window = suggest_flux_window(spec, pot, kUnits);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mean_exit_time_via_flux(spec, pot, kUnits, window));
  }
}
BENCHMARK(BM_FluxOracle)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
