#include "qspeed/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qspeed {

namespace {

GridValue guarded(const ScalarFn& f, double x) {
  GridValue out;
  try {
    out.value = f(x);
  } catch (...) {
    out.error = std::current_exception();
  }
  return out;
}

SweepPoint sweep_point(const ScalarFn& speed_of_xi, const ScalarFn& step, double xi) {
  SweepPoint p{xi, guarded(speed_of_xi, xi), {}};
  p.rate = guarded([&](double x) { return speedup_measure(speed_of_xi, x, step(x)); }, xi);
  return p;
}

}  // namespace

std::vector<GridValue> evaluate_grid(std::span<const double> xs, const ScalarFn& f) {
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
  std::vector<GridValue> out(xs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = guarded(f, xs[i]);
  return out;
}

std::vector<GridValue> evaluate_grid_serial(std::span<const double> xs, const ScalarFn& f) {
  std::vector<GridValue> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = guarded(f, xs[i]);
  return out;
}

std::vector<GridValue> evaluate_speeds(const Trajectory& traj, std::span<const double> times,
                                       const MetricKind& metric, const SpeedOptions& options) {
  return evaluate_grid(times, [&](double t) { return speed_at(traj, t, metric, options); });
}

std::vector<GridValue> evaluate_speeds_serial(const Trajectory& traj,
                                              std::span<const double> times,
                                              const MetricKind& metric,
                                              const SpeedOptions& options) {
  return evaluate_grid_serial(times,
                              [&](double t) { return speed_at(traj, t, metric, options); });
}

std::vector<SweepPoint> sweep_speedup(std::span<const double> xis, const ScalarFn& speed_of_xi,
                                      const ScalarFn& step) {
  const auto n = static_cast<std::ptrdiff_t>(xis.size());
  std::vector<SweepPoint> out(xis.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = sweep_point(speed_of_xi, step, xis[i]);
  return out;
}

std::vector<SweepPoint> sweep_speedup_serial(std::span<const double> xis,
                                             const ScalarFn& speed_of_xi, const ScalarFn& step) {
  std::vector<SweepPoint> out;
  out.reserve(xis.size());
  for (double xi : xis) out.push_back(sweep_point(speed_of_xi, step, xi));
  return out;
}

int kernel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void rethrow_first_error(std::span<const GridValue> values) {
  for (const auto& v : values)
    if (v.error) std::rethrow_exception(v.error);
}

}  // namespace qspeed
