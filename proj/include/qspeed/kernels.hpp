#pragma once

// Data-parallel grid kernels. Each kernel has an OpenMP version and a serial
// reference with identical per-point arithmetic; results are assembled in
// grid order, so both produce bit-identical output.

#include <cmath>
#include <exception>
#include <functional>
#include <span>
#include <vector>

#include "qspeed/metrics.hpp"
#include "qspeed/speed.hpp"
#include "qspeed/trajectory.hpp"

namespace qspeed {

/// One grid evaluation: a value or the exception it raised.
struct GridValue {
  double value = NAN;
  std::exception_ptr error;
  bool ok() const { return !error; }
};

using ScalarFn = std::function<double(double)>;

std::vector<GridValue> evaluate_grid(std::span<const double> xs, const ScalarFn& f);
std::vector<GridValue> evaluate_grid_serial(std::span<const double> xs, const ScalarFn& f);

std::vector<GridValue> evaluate_speeds(const Trajectory& traj, std::span<const double> times,
                                       const MetricKind& metric, const SpeedOptions& options = {});
std::vector<GridValue> evaluate_speeds_serial(const Trajectory& traj,
                                              std::span<const double> times,
                                              const MetricKind& metric,
                                              const SpeedOptions& options = {});

/// S(xi) and dS/dxi at every point of a parameter sweep.
struct SweepPoint {
  double xi;
  GridValue speed;
  GridValue rate;
};

/// `step` maps xi to its finite-difference step (default_parameter_step by default).
std::vector<SweepPoint> sweep_speedup(std::span<const double> xis, const ScalarFn& speed_of_xi,
                                      const ScalarFn& step = default_parameter_step);
std::vector<SweepPoint> sweep_speedup_serial(std::span<const double> xis,
                                             const ScalarFn& speed_of_xi,
                                             const ScalarFn& step = default_parameter_step);

/// Threads the parallel kernels will use (1 when built without OpenMP).
int kernel_threads();

/// Rethrows the first failed entry in grid order, if any.
void rethrow_first_error(std::span<const GridValue> values);

}  // namespace qspeed
