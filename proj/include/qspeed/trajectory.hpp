#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "qspeed/linalg.hpp"

namespace qspeed {

using OperatorFn = std::function<ComplexMatrix(double)>;

/// A curve t -> rho_t of density operators on [0, horizon].
///
/// Closures must capture immutable data only; a Trajectory is evaluated
/// concurrently from several threads by the grid kernels.
struct Trajectory {
  std::size_t dim = 0;
  double horizon = 0.0;
  OperatorFn state_at;
  /// Analytic d rho / dt; empty when only finite differences are available.
  OperatorFn derivative_at;
  /// Parameters the trajectory was built from (for reporting).
  std::map<std::string, double> parameters;
  /// Analytic t -> 0+ limit of the speed, for curves that start on the
  /// boundary where the derivative formula is 0/0. The limit comes from the
  /// diagonal term c(p, p) = 1/p alone, so it is the same for every
  /// boundary-extendable metric.
  std::optional<double> initial_speed;
  /// Earliest time evaluated directly when no initial_speed is advertised.
  double time_floor = 0.0;

  bool has_derivative() const { return static_cast<bool>(derivative_at); }
  /// Copy with the analytic derivative stripped (forces finite differences).
  Trajectory without_derivative() const;
};

/// t -> U rho_t U^dagger, with the derivative conjugated alongside.
Trajectory conjugated(const Trajectory& traj, const ComplexMatrix& unitary);

/// Constant curve rho_t = rho.
Trajectory stationary_trajectory(const ComplexMatrix& rho, double horizon);

struct DensityCheck {
  bool hermitian;
  double trace_error;
  double min_eigenvalue;
  bool ok(double tol = 1e-10) const {
    return hermitian && trace_error <= tol && min_eigenvalue >= -tol;
  }
};

/// Hermiticity, |tr rho - 1| and smallest eigenvalue of a candidate state.
DensityCheck check_density(const ComplexMatrix& rho, double tol = default_herm_tol);

}  // namespace qspeed
