#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qspeed/linalg.hpp"
#include "qspeed/metrics.hpp"
#include "qspeed/trajectory.hpp"

namespace qspeed {

inline constexpr double default_time_step = 1e-5;
inline constexpr double default_rank_tol = 1e-12;
inline constexpr double default_elem_tol = 1e-8;

struct SpeedOptions {
  /// Eigenvalue pairs with p_k + p_l below this are on the boundary.
  double rank_tol = default_rank_tol;
  /// Boundary matrix elements at or above this are a rank-increase error.
  double elem_tol = default_elem_tol;
  /// Finite-difference step when the trajectory has no analytic derivative.
  double time_step = default_time_step;
  /// Send pure states through the pure-state reduction.
  bool route_pure_states = true;
};

/// Analytic derivative if the trajectory has one, otherwise a central
/// difference (second-order one-sided within h of either end), symmetrized.
ComplexMatrix rho_dot(const Trajectory& traj, double t, double h = default_time_step);

/// S = 1/2 sqrt(sum_kl c(p_k, p_l) |<Phi_k| rho_dot |Phi_l>|^2) for a given
/// state and tangent. Throws RankIncreaseError (carrying `t`) when the
/// tangent has weight on a boundary eigenvalue pair.
double speed_from_tangent(const ComplexMatrix& rho, const ComplexMatrix& rho_dot,
                          const MetricKind& metric, const SpeedOptions& options = {},
                          double t = 0.0);

/// Instantaneous speed along the trajectory at time t.
double speed_at(const Trajectory& traj, double t, const MetricKind& metric,
                const SpeedOptions& options = {});

/// Same quantity assembled from eigenvalue and eigenvector derivatives,
///   S^2 = sum_k (dq_k/dt)^2 + sum_{k!=l} c(p_k,p_l) p_k (p_k - p_l)/2 |<Phi_l|dPhi_k/dt>|^2,
/// with q_k = sqrt(p_k). Eigenvalues below rank_tol form one kernel block that
/// enters only through its projector. Nonzero eigenvalues closer than
/// eig_degeneracy_tol raise DegenerateSpectrumError.
double speed_spectral_form(const Trajectory& traj, double t, const MetricKind& metric,
                           double h = default_time_step, double rank_tol = default_rank_tol);

/// 1e-5 * max(1, |xi0|)
double default_parameter_step(double xi0);

/// Central-difference estimate of dS/dxi at xi0. Positive means speedup.
double speedup_measure(const std::function<double(double)>& speed_of_xi, double xi0,
                       std::optional<double> h = std::nullopt);

struct SpeedSample {
  double t;
  double speed;
  double speed_rate;  // dS/dt
};

struct SpeedCurve {
  MetricKind metric;
  std::vector<SpeedSample> samples;
};

/// Derivative of sampled y(x) on a strictly increasing, possibly non-uniform
/// grid: three-point central differences inside, one-sided at the ends.
std::vector<double> sampled_derivative(std::span<const double> x, std::span<const double> y);

/// Samples S on `grid` (parallel over grid points) and differentiates the
/// samples in t. Singularity errors are rethrown with the offending t.
SpeedCurve speed_curve(const Trajectory& traj, std::span<const double> grid,
                       const MetricKind& metric, const SpeedOptions& options = {});

/// Trapezoid estimate of the curve length, the integral of S dt over the samples.
double curve_length(const SpeedCurve& curve);

/// Serial reference for speed_curve.
SpeedCurve speed_curve_serial(const Trajectory& traj, std::span<const double> grid,
                              const MetricKind& metric, const SpeedOptions& options = {});

}  // namespace qspeed
