#include <benchmark/benchmark.h>

#include <vector>

#include "qspeed/kernels.hpp"
#include "qspeed/models.hpp"

using namespace qspeed;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

const Trajectory& pair_trajectory() {
  static const Trajectory traj =
      open_two_qubit_trajectory(OpenSystemParams::lorentzian(0.1, 0.6), TwoQubitState::aligned);
  return traj;
}

double speed_of_omega(double omega) {
  const auto p = OpenSystemParams::lorentzian(1.0 / omega, 1.0);
  return speed_at(open_qubit_trajectory(p), 5.0, MetricKind::sld());
}

void bm_speed_curve_serial(benchmark::State& state) {
  const auto grid = linspace(1e-4, 30.0, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(speed_curve_serial(pair_trajectory(), grid, MetricKind::sld()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_speed_curve_parallel(benchmark::State& state) {
  const auto grid = linspace(1e-4, 30.0, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(speed_curve(pair_trajectory(), grid, MetricKind::sld()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_sweep_serial(benchmark::State& state) {
  const auto xs = linspace(0.02, 3.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_speedup_serial(xs, speed_of_omega));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_sweep_parallel(benchmark::State& state) {
  const auto xs = linspace(0.02, 3.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_speedup(xs, speed_of_omega));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(bm_speed_curve_serial)->Arg(256)->Arg(4096);
BENCHMARK(bm_speed_curve_parallel)->Arg(256)->Arg(4096);
BENCHMARK(bm_sweep_serial)->Arg(300);
BENCHMARK(bm_sweep_parallel)->Arg(300);

BENCHMARK_MAIN();
