#include "qspeed/speed.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qspeed/errors.hpp"
#include "qspeed/kernels.hpp"

namespace qspeed {

namespace {

void require_time(const Trajectory& traj, double t, const char* who) {
  if (!(t >= 0.0) || t > traj.horizon * (1.0 + 1e-12))
    throw InvalidArgument(std::string(who) + ": t = " + std::to_string(t) + " outside [0, " +
                          std::to_string(traj.horizon) + "]");
}

// Finite-difference stencil for d/dt at t: offsets and weights.
struct Stencil {
  std::vector<double> offsets;
  std::vector<double> weights;
};

Stencil derivative_stencil(const Trajectory& traj, double t, double h) {
  if (t - h < 0.0) return {{0.0, h, 2.0 * h}, {-1.5 / h, 2.0 / h, -0.5 / h}};
  if (t + h > traj.horizon) return {{0.0, -h, -2.0 * h}, {1.5 / h, -2.0 / h, 0.5 / h}};
  return {{-h, h}, {-0.5 / h, 0.5 / h}};
}

}  // namespace

ComplexMatrix rho_dot(const Trajectory& traj, double t, double h) {
  if (!(h > 0.0)) throw InvalidArgument("rho_dot: step must be positive");
  require_time(traj, t, "rho_dot");
  if (traj.has_derivative()) return hermitian_part(traj.derivative_at(t));
  const Stencil st = derivative_stencil(traj, t, h);
  ComplexMatrix d(traj.dim);
  for (std::size_t i = 0; i < st.offsets.size(); ++i)
    d += traj.state_at(t + st.offsets[i]) * Complex(st.weights[i]);
  return hermitian_part(d);
}

double speed_from_tangent(const ComplexMatrix& rho, const ComplexMatrix& tangent,
                          const MetricKind& metric, const SpeedOptions& options, double t) {
  if (rho.dim() != tangent.dim()) throw InvalidArgument("speed: dimension mismatch");
  const HermitianEigenSystem es = eigh(rho);
  const std::size_t n = es.dim();
  const ComplexMatrix& v = es.eigenvectors;
  const ComplexMatrix elements = v.adjoint() * tangent * v;

  std::vector<double> p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = std::max(es.eigenvalues[k], 0.0);

  auto boundary_check = [&](std::size_t k, std::size_t l) {
    if (std::abs(elements(k, l)) >= options.elem_tol)
      throw RankIncreaseError("speed: tangent has weight " +
                                  std::to_string(std::abs(elements(k, l))) +
                                  " on a vanishing eigenvalue pair at t = " + std::to_string(t),
                              t);
  };

  const bool pure = n >= 2 && es.eigenvalues[n - 2] < pure_state_threshold;
  if (pure && options.route_pure_states) {
    for (std::size_t k = 0; k + 1 < n; ++k)
      for (std::size_t l = 0; l + 1 < n; ++l)
        if (p[k] + p[l] < options.rank_tol) boundary_check(k, l);
    const ComplexVector psi = es.eigenvector(n - 1);
    const ComplexVector moved = tangent * psi;
    return pure_state_speed(psi, moved, metric);
  }

  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      if (p[k] + p[l] < options.rank_tol) {
        boundary_check(k, l);
        continue;
      }
      sum += mc_function(metric, p[k], p[l]) * std::norm(elements(k, l));
    }
  return 0.5 * std::sqrt(sum);
}

double speed_at(const Trajectory& traj, double t, const MetricKind& metric,
                const SpeedOptions& options) {
  require_time(traj, t, "speed_at");
  if (t == 0.0 && traj.initial_speed) return *traj.initial_speed;
  const double te = std::max(t, traj.time_floor);
  return speed_from_tangent(traj.state_at(te), rho_dot(traj, te, options.time_step), metric,
                            options, te);
}

double speed_spectral_form(const Trajectory& traj, double t, const MetricKind& metric, double h,
                           double rank_tol) {
  if (!(h > 0.0)) throw InvalidArgument("speed_spectral_form: step must be positive");
  require_time(traj, t, "speed_spectral_form");
  if (t == 0.0 && traj.initial_speed) return *traj.initial_speed;
  const double te = std::max(t, traj.time_floor);

  const HermitianEigenSystem center = eigh(traj.state_at(te));
  const std::size_t n = center.dim();
  std::vector<std::size_t> active;  // eigenvalues off the boundary
  for (std::size_t k = 0; k < n; ++k)
    if (center.eigenvalues[k] >= rank_tol) active.push_back(k);
  for (std::size_t i = 0; i + 1 < active.size(); ++i)
    if (center.eigenvalues[active[i + 1]] - center.eigenvalues[active[i]] < eig_degeneracy_tol)
      throw DegenerateSpectrumError(
          "speed_spectral_form: degenerate nonzero eigenvalues at t = " + std::to_string(te), te);
  const bool has_kernel = active.size() < n;

  const Stencil st = derivative_stencil(traj, te, h);
  std::vector<double> q_dot(n, 0.0);
  std::vector<ComplexVector> phi_dot(n, ComplexVector(n));
  for (std::size_t s = 0; s < st.offsets.size(); ++s) {
    const HermitianEigenSystem es =
        st.offsets[s] == 0.0 ? center : eigh(traj.state_at(te + st.offsets[s]));
    const double w = st.weights[s];
    for (std::size_t k : active) {
      q_dot[k] += w * std::sqrt(std::max(es.eigenvalues[k], 0.0));
      ComplexVector vk = es.eigenvector(k);
      const Complex overlap = vdot(center.eigenvector(k), vk);
      if (std::abs(overlap) < 0.5)
        throw DegenerateSpectrumError(
            "speed_spectral_form: eigenvector ordering changed within the stencil at t = " +
                std::to_string(te),
            te);
      const Complex align = std::conj(overlap) / std::abs(overlap);
      for (std::size_t i = 0; i < n; ++i) phi_dot[k][i] += w * align * vk[i];
    }
  }

  double sum = 0.0;
  for (std::size_t k : active) {
    const double pk = center.eigenvalues[k];
    sum += q_dot[k] * q_dot[k];
    ComplexVector kernel_part = phi_dot[k];
    for (std::size_t l : active) {
      const ComplexVector phi_l = center.eigenvector(l);
      const Complex amp = vdot(phi_l, phi_dot[k]);
      for (std::size_t i = 0; i < n; ++i) kernel_part[i] -= amp * phi_l[i];
      if (l == k) continue;
      const double pl = center.eigenvalues[l];
      sum += mc_function(metric, pk, pl) * pk * (pk - pl) / 2.0 * std::norm(amp);
    }
    if (has_kernel) {
      const double w = vdot(kernel_part, kernel_part).real();
      sum += mc_function(metric, pk, 0.0) * pk * pk / 2.0 * w;
    }
  }
  return std::sqrt(std::max(sum, 0.0));
}

double default_parameter_step(double xi0) { return 1e-5 * std::max(1.0, std::abs(xi0)); }

double speedup_measure(const std::function<double(double)>& speed_of_xi, double xi0,
                       std::optional<double> h) {
  const double step = h.value_or(default_parameter_step(xi0));
  if (!(step > 0.0)) throw InvalidArgument("speedup_measure: step must be positive");
  return (speed_of_xi(xi0 + step) - speed_of_xi(xi0 - step)) / (2.0 * step);
}

std::vector<double> sampled_derivative(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw InvalidArgument("sampled_derivative: size mismatch");
  if (n < 2) throw InvalidArgument("sampled_derivative: need at least two samples");
  std::vector<double> d(n);
  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = x[i] - x[i - 1];
    const double h2 = x[i + 1] - x[i];
    d[i] = -h2 / (h1 * (h1 + h2)) * y[i - 1] + (h2 - h1) / (h1 * h2) * y[i] +
           h1 / (h2 * (h1 + h2)) * y[i + 1];
  }
  {
    const double h1 = x[1] - x[0];
    const double h2 = x[2] - x[1];
    d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * y[0] + (h1 + h2) / (h1 * h2) * y[1] -
           h1 / (h2 * (h1 + h2)) * y[2];
  }
  {
    const double h1 = x[n - 1] - x[n - 2];
    const double h2 = x[n - 2] - x[n - 3];
    d[n - 1] = (2.0 * h1 + h2) / (h1 * (h1 + h2)) * y[n - 1] - (h1 + h2) / (h1 * h2) * y[n - 2] +
               h1 / (h2 * (h1 + h2)) * y[n - 3];
  }
  return d;
}

namespace {

void validate_grid(const Trajectory& traj, std::span<const double> grid) {
  if (grid.size() < 2) throw InvalidArgument("speed_curve: grid needs at least two points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_time(traj, grid[i], "speed_curve");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw InvalidArgument("speed_curve: grid must be strictly increasing");
  }
}

SpeedCurve assemble_curve(std::span<const double> grid, const std::vector<GridValue>& values,
                          const MetricKind& metric) {
  rethrow_first_error(values);
  std::vector<double> s(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) s[i] = values[i].value;
  const auto rate = sampled_derivative(grid, s);
  SpeedCurve curve{metric, {}};
  curve.samples.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) curve.samples.push_back({grid[i], s[i], rate[i]});
  return curve;
}

}  // namespace

SpeedCurve speed_curve(const Trajectory& traj, std::span<const double> grid,
                       const MetricKind& metric, const SpeedOptions& options) {
  validate_grid(traj, grid);
  return assemble_curve(grid, evaluate_speeds(traj, grid, metric, options), metric);
}

SpeedCurve speed_curve_serial(const Trajectory& traj, std::span<const double> grid,
                              const MetricKind& metric, const SpeedOptions& options) {
  validate_grid(traj, grid);
  return assemble_curve(grid, evaluate_speeds_serial(traj, grid, metric, options), metric);
}

double curve_length(const SpeedCurve& curve) {
  double length = 0.0;
  for (std::size_t i = 1; i < curve.samples.size(); ++i)
    length += 0.5 * (curve.samples[i].speed + curve.samples[i - 1].speed) *
              (curve.samples[i].t - curve.samples[i - 1].t);
  return length;
}

}  // namespace qspeed
