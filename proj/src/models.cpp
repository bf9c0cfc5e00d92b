#include "qspeed/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qspeed/errors.hpp"

namespace qspeed {

// ---- closed systems -------------------------------------------------------

ClosedQubitParams ClosedQubitParams::from_alpha(double alpha, double omega) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
  return {omega, alpha, std::sqrt(std::max(0.0, 1.0 - alpha * alpha))};
}

void ClosedQubitParams::validate() const {
  if (!(omega > 0.0)) throw InvalidArgument("omega must be positive");
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12)
    throw InvalidArgument("amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
}

TwoQubitState parse_two_qubit_state(std::string_view key) {
  if (key == "aligned") return TwoQubitState::aligned;
  if (key == "anti") return TwoQubitState::anti;
  throw InvalidArgument("unknown two-qubit state '" + std::string(key) + "' (aligned, anti)");
}

PureStatePoint precession_state(const ClosedQubitParams& p, double t) {
  p.validate();
  const Complex i(0.0, 1.0);
  const Complex up = p.alpha * std::exp(-i * p.omega * t / 2.0);
  const Complex down = p.beta * std::exp(i * p.omega * t / 2.0);
  return {{up, down}, {-i * p.omega / 2.0 * up, i * p.omega / 2.0 * down}};
}

PureStatePoint two_qubit_closed_state(const ClosedQubitParams& p, TwoQubitState kind, double t) {
  p.validate();
  PureStatePoint s{ComplexVector(4), ComplexVector(4)};
  if (kind == TwoQubitState::anti) {
    s.psi[1] = p.alpha;  // |10>
    s.psi[2] = p.beta;   // |01>
    return s;
  }
  const Complex i(0.0, 1.0);
  s.psi[0] = p.alpha * std::exp(-i * p.omega * t);  // |11>
  s.psi[3] = p.beta * std::exp(i * p.omega * t);    // |00>
  s.psi_dot[0] = -i * p.omega * s.psi[0];
  s.psi_dot[3] = i * p.omega * s.psi[3];
  return s;
}

namespace {

template <class StateFn>
Trajectory pure_trajectory(std::size_t dim, double horizon, StateFn state) {
  Trajectory traj;
  traj.dim = dim;
  traj.horizon = horizon;
  traj.state_at = [state](double t) { return ComplexMatrix::projector(state(t).psi); };
  traj.derivative_at = [state](double t) {
    const PureStatePoint s = state(t);
    return ComplexMatrix::outer(s.psi_dot, s.psi) + ComplexMatrix::outer(s.psi, s.psi_dot);
  };
  return traj;
}

std::map<std::string, double> closed_parameters(const ClosedQubitParams& p) {
  return {{"omega", p.omega}, {"alpha", std::abs(p.alpha)}, {"beta", std::abs(p.beta)}};
}

}  // namespace

Trajectory precession_trajectory(const ClosedQubitParams& p, double horizon) {
  p.validate();
  Trajectory traj = pure_trajectory(2, horizon, [p](double t) { return precession_state(p, t); });
  traj.parameters = closed_parameters(p);
  return traj;
}

Trajectory two_qubit_closed_trajectory(const ClosedQubitParams& p, TwoQubitState kind,
                                       double horizon) {
  p.validate();
  Trajectory traj = pure_trajectory(
      4, horizon, [p, kind](double t) { return two_qubit_closed_state(p, kind, t); });
  traj.parameters = closed_parameters(p);
  traj.parameters["C"] = 2.0 * std::abs(p.alpha * p.beta);
  return traj;
}

double precession_speed_analytic(const ClosedQubitParams& p) {
  return std::abs(p.alpha * p.beta) * p.omega;
}

double two_qubit_closed_speed_analytic(const ClosedQubitParams& p, TwoQubitState kind) {
  return kind == TwoQubitState::aligned ? 2.0 * std::abs(p.alpha * p.beta) * p.omega : 0.0;
}

// ---- open systems ---------------------------------------------------------

OpenSystemParams OpenSystemParams::lorentzian(double gamma_ratio, double alpha, double gamma0) {
  OpenSystemParams p{gamma0, gamma_ratio * gamma0, alpha, false};
  p.validate();
  return p;
}

OpenSystemParams OpenSystemParams::markovian(double alpha, double gamma0) {
  OpenSystemParams p{gamma0, std::numeric_limits<double>::infinity(), alpha, true};
  p.validate();
  return p;
}

void OpenSystemParams::validate() const {
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) throw InvalidArgument("gamma0 must be positive");
  if (!markovian_limit && !(gamma_width > 0.0 && std::isfinite(gamma_width)))
    throw InvalidArgument("spectral width Gamma must be positive and finite");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
}

double OpenSystemParams::gamma_ratio() const {
  return markovian_limit ? std::numeric_limits<double>::infinity() : gamma_width / gamma0;
}

double OpenSystemParams::omega_ratio() const {
  return markovian_limit ? 0.0 : gamma0 / gamma_width;
}

PopulationBranch OpenSystemParams::branch() const {
  if (markovian_limit) return PopulationBranch::markovian;
  const double r = gamma_width / gamma0;
  if (std::abs(r - 2.0) <= critical_window) return PopulationBranch::critical;
  return r < 2.0 ? PopulationBranch::oscillatory : PopulationBranch::hyperbolic;
}

double OpenSystemParams::kappa() const {
  if (markovian_limit) return 0.0;
  return std::sqrt(std::abs(2.0 * gamma0 * gamma_width - gamma_width * gamma_width));
}

namespace {

void require_nonnegative_time(double t) {
  if (!(t >= 0.0)) throw InvalidArgument("time must be nonnegative");
}

// e^{-Gamma t/2} cosh(x) and e^{-Gamma t/2} sinh(x) without overflow, x = kappa~ t/2 < Gamma t/2.
double damped_cosh(double x, double half_decay) {
  if (x < 20.0) return std::exp(-half_decay) * std::cosh(x);
  return 0.5 * (std::exp(x - half_decay) + std::exp(-x - half_decay));
}

double damped_sinh(double x, double half_decay) {
  if (x < 20.0) return std::exp(-half_decay) * std::sinh(x);
  return 0.5 * (std::exp(x - half_decay) - std::exp(-x - half_decay));
}

}  // namespace

double excited_amplitude(const OpenSystemParams& p, double t) {
  require_nonnegative_time(t);
  const double g = p.gamma_width;
  switch (p.branch()) {
    case PopulationBranch::markovian:
      return std::exp(-p.gamma0 * t / 2.0);
    case PopulationBranch::critical:
      return std::exp(-g * t / 2.0) * (1.0 + g * t / 2.0);
    case PopulationBranch::oscillatory: {
      const double k = p.kappa();
      const double x = k * t / 2.0;
      return std::exp(-g * t / 2.0) * (std::cos(x) + g / k * std::sin(x));
    }
    case PopulationBranch::hyperbolic: {
      const double k = p.kappa();
      const double x = k * t / 2.0;
      return damped_cosh(x, g * t / 2.0) + g / k * damped_sinh(x, g * t / 2.0);
    }
  }
  return 0.0;
}

double excited_amplitude_dot(const OpenSystemParams& p, double t) {
  require_nonnegative_time(t);
  const double g = p.gamma_width;
  switch (p.branch()) {
    case PopulationBranch::markovian:
      return -p.gamma0 / 2.0 * std::exp(-p.gamma0 * t / 2.0);
    case PopulationBranch::critical:
      return -g * g * t / 4.0 * std::exp(-g * t / 2.0);
    case PopulationBranch::oscillatory: {
      const double k = p.kappa();
      return -p.gamma0 * g / k * std::exp(-g * t / 2.0) * std::sin(k * t / 2.0);
    }
    case PopulationBranch::hyperbolic: {
      const double k = p.kappa();
      return -p.gamma0 * g / k * damped_sinh(k * t / 2.0, g * t / 2.0);
    }
  }
  return 0.0;
}

double population_factor(const OpenSystemParams& p, double t) {
  const double g = excited_amplitude(p, t);
  return std::min(1.0, g * g);
}

double population_factor_dot(const OpenSystemParams& p, double t) {
  return 2.0 * excited_amplitude(p, t) * excited_amplitude_dot(p, t);
}

double sqrt_population_dot(const OpenSystemParams& p, double t) {
  const double g = excited_amplitude(p, t);
  const double gd = excited_amplitude_dot(p, t);
  if (g > 0.0) return gd;
  if (g < 0.0) return -gd;
  return std::abs(gd);
}

namespace {

void require_population(double population) {
  if (!(population >= 0.0 && population <= 1.0))
    throw InvalidArgument("population factor must lie in [0, 1]");
}

// Linear map on a single-qubit block:
//   00 -> a*00,  01 -> b*01,  10 -> b*10,  11 -> c*11 + d*00.
// The damping channel is (P, sqrt P, 1, 1 - P); its time derivative is (P', sqrt(P)', 0, -P').
struct QubitBlockMap {
  double a, b, c, d;
};

ComplexMatrix apply_on_qubit(const ComplexMatrix& rho, int qubit, int n_qubits,
                             const QubitBlockMap& m) {
  const std::size_t dim = rho.dim();
  const std::size_t bit = std::size_t{1} << (n_qubits - 1 - qubit);
  ComplexMatrix out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (j & bit) continue;
      const Complex e00 = rho(i, j);
      const Complex e01 = rho(i, j | bit);
      const Complex e10 = rho(i | bit, j);
      const Complex e11 = rho(i | bit, j | bit);
      out(i, j) = m.a * e00;
      out(i, j | bit) = m.b * e01;
      out(i | bit, j) = m.b * e10;
      out(i | bit, j | bit) = m.c * e11 + m.d * e00;
    }
  }
  return out;
}

void require_qubits(const ComplexMatrix& rho0, int n_qubits) {
  if (n_qubits < 1 || n_qubits > 2) throw InvalidArgument("local damping supports 1 or 2 qubits");
  if (rho0.dim() != (std::size_t{1} << n_qubits))
    throw InvalidArgument("state dimension does not match the qubit count");
}

}  // namespace

ComplexMatrix amplitude_damping_evolve(const ComplexMatrix& rho0, double population) {
  require_population(population);
  if (rho0.dim() != 2) throw InvalidArgument("amplitude_damping_evolve: expects a 2x2 state");
  const double s = std::sqrt(population);
  ComplexMatrix out(2);
  out(0, 0) = rho0(0, 0) * population;
  out(0, 1) = rho0(0, 1) * s;
  out(1, 0) = rho0(1, 0) * s;
  out(1, 1) = 1.0 - rho0(0, 0).real() * population;
  return out;
}

ComplexMatrix local_damping_evolve(const ComplexMatrix& rho0, double population, int n_qubits) {
  require_population(population);
  require_qubits(rho0, n_qubits);
  // Operation elements: E0 = diag(sqrt P, 1), E1 = sqrt(1 - P)|0><1|.
  ComplexMatrix e0(2);
  e0(0, 0) = std::sqrt(population);
  e0(1, 1) = 1.0;
  ComplexMatrix e1(2);
  e1(1, 0) = std::sqrt(1.0 - population);
  const ComplexMatrix elements[2] = {e0, e1};

  if (n_qubits == 1) {
    ComplexMatrix out(2);
    for (const auto& e : elements) out += e * rho0 * e.adjoint();
    return out;
  }
  ComplexMatrix out(4);
  for (const auto& ea : elements)
    for (const auto& eb : elements) {
      const ComplexMatrix k = tensor(ea, eb);
      out += k * rho0 * k.adjoint();
    }
  return out;
}

ComplexMatrix local_damping_rate(const ComplexMatrix& rho0, double population,
                                 double population_dot, double sqrt_population_dot,
                                 int n_qubits) {
  require_population(population);
  require_qubits(rho0, n_qubits);
  const QubitBlockMap channel{population, std::sqrt(population), 1.0, 1.0 - population};
  const QubitBlockMap rate{population_dot, sqrt_population_dot, 0.0, -population_dot};
  if (n_qubits == 1) return apply_on_qubit(rho0, 0, 1, rate);
  return apply_on_qubit(apply_on_qubit(rho0, 1, 2, channel), 0, 2, rate) +
         apply_on_qubit(apply_on_qubit(rho0, 1, 2, rate), 0, 2, channel);
}

ComplexVector open_initial_state(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
  return {alpha, std::sqrt(std::max(0.0, 1.0 - alpha * alpha))};
}

ComplexVector two_qubit_state(double alpha, TwoQubitState kind) {
  const ComplexVector single = open_initial_state(alpha);
  ComplexVector psi(4);
  if (kind == TwoQubitState::aligned) {
    psi[0] = single[0];  // |11>
    psi[3] = single[1];  // |00>
  } else {
    psi[1] = single[0];  // |10>
    psi[2] = single[1];  // |01>
  }
  return psi;
}

namespace {

std::map<std::string, double> open_parameters(const OpenSystemParams& p) {
  std::map<std::string, double> m{{"gamma0", p.gamma0}, {"alpha", p.alpha}};
  if (p.markovian_limit)
    m["markovian_limit"] = 1.0;
  else
    m["Gamma_over_gamma0"] = p.gamma_ratio();
  return m;
}

Trajectory damped_trajectory(const OpenSystemParams& p, const ComplexMatrix& rho0, int n_qubits,
                             double horizon) {
  Trajectory traj;
  traj.dim = rho0.dim();
  traj.horizon = horizon;
  traj.state_at = [p, rho0, n_qubits](double t) {
    const double pt = population_factor(p, t);
    return n_qubits == 1 ? amplitude_damping_evolve(rho0, pt)
                         : local_damping_evolve(rho0, pt, n_qubits);
  };
  traj.derivative_at = [p, rho0, n_qubits](double t) {
    return local_damping_rate(rho0, population_factor(p, t), population_factor_dot(p, t),
                              sqrt_population_dot(p, t), n_qubits);
  };
  traj.parameters = open_parameters(p);
  traj.time_floor = 1e-8 / p.gamma0;
  return traj;
}

}  // namespace

Trajectory open_qubit_trajectory(const OpenSystemParams& p, double horizon) {
  p.validate();
  Trajectory traj =
      damped_trajectory(p, ComplexMatrix::projector(open_initial_state(p.alpha)), 1, horizon);
  if (!p.markovian_limit) traj.initial_speed = open_qubit_initial_speed(p);
  return traj;
}

Trajectory open_two_qubit_trajectory(const OpenSystemParams& p, TwoQubitState kind,
                                     double horizon) {
  p.validate();
  Trajectory traj = damped_trajectory(
      p, ComplexMatrix::projector(two_qubit_state(p.alpha, kind)), 2, horizon);
  if (!p.markovian_limit) {
    // Anti-aligned: P and 1 - P share the excitation, limit sqrt(Gamma gamma0 / 2) for every alpha.
    traj.initial_speed = kind == TwoQubitState::aligned
                             ? open_two_qubit_initial_speed(p)
                             : std::sqrt(p.gamma_width * p.gamma0 / 2.0);
  }
  traj.parameters["C"] = concurrence_from_alpha(p.alpha);
  return traj;
}

double open_qubit_initial_speed(const OpenSystemParams& p) {
  if (p.markovian_limit) return std::numeric_limits<double>::infinity();
  return p.alpha * p.alpha * std::sqrt(p.gamma_width * p.gamma0 / 2.0);
}

double open_two_qubit_initial_speed(const OpenSystemParams& p) {
  if (p.markovian_limit) return std::numeric_limits<double>::infinity();
  return p.alpha * std::sqrt(p.gamma_width * p.gamma0);
}

// The analytic speeds use |dP/dt| / sqrt(P) = 2 |dG/dt|, which stays finite where P_t = 0.

double open_qubit_speed_analytic(const OpenSystemParams& p, double t) {
  require_nonnegative_time(t);
  if (t == 0.0) return open_qubit_initial_speed(p);
  const double pt = population_factor(p, t);
  if (1.0 - pt <= 0.0) return open_qubit_initial_speed(p);
  const double a2 = p.alpha * p.alpha;
  return p.alpha * std::abs(excited_amplitude_dot(p, t)) *
         std::sqrt((1.0 - (1.0 - a2) * pt) / (1.0 - pt));
}

double open_two_qubit_speed_analytic(const OpenSystemParams& p, double t) {
  require_nonnegative_time(t);
  if (t == 0.0) return open_two_qubit_initial_speed(p);
  const double pt = population_factor(p, t);
  if (1.0 - pt <= 0.0) return open_two_qubit_initial_speed(p);
  const double a2 = p.alpha * p.alpha;
  const double num = 1.0 - 2.0 * pt + 2.0 * pt * pt;
  const double den = 2.0 * (1.0 - pt) * (1.0 - 2.0 * a2 * pt + 2.0 * a2 * pt * pt);
  return 2.0 * p.alpha * std::abs(excited_amplitude_dot(p, t)) * std::sqrt(num / den);
}

double open_two_qubit_anti_speed_analytic(const OpenSystemParams& p, double t) {
  require_nonnegative_time(t);
  if (t == 0.0)
    return p.markovian_limit ? std::numeric_limits<double>::infinity()
                             : std::sqrt(p.gamma_width * p.gamma0 / 2.0);
  const double pt = population_factor(p, t);
  return std::abs(excited_amplitude_dot(p, t)) / std::sqrt(1.0 - pt);
}

double markovian_two_qubit_speed(double concurrence, double t) {
  if (!(concurrence >= 0.0 && concurrence <= 1.0))
    throw InvalidArgument("concurrence must lie in [0, 1]");
  if (!(t >= 0.0)) throw InvalidArgument("time must be nonnegative");
  if (t == 0.0)
    throw DivergenceError("markovian_two_qubit_speed: speed diverges at t = 0 in the Markovian limit",
                          0.0);
  const double pt = std::exp(-t);
  const double x = 1.0 - std::sqrt(1.0 - concurrence * concurrence);
  return 0.5 * std::sqrt(x * pt * (1.0 - 2.0 * pt + 2.0 * pt * pt) /
                         ((1.0 - pt) * (1.0 - x * pt * (1.0 - pt))));
}

double concurrence_from_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
  return 2.0 * alpha * std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
}

double alpha_from_concurrence(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw InvalidArgument("concurrence must lie in [0, 1]");
  // 1 - sqrt(1 - C^2) written without cancellation at small C.
  const double x = c * c / (1.0 + std::sqrt(1.0 - c * c));
  return std::sqrt(x / 2.0);
}

double concurrence(const ComplexMatrix& rho) {
  if (rho.dim() != 4) throw InvalidArgument("concurrence: expects a two-qubit (4x4) state");
  const DensityCheck check = check_density(rho);
  if (!check.ok())
    throw InvalidArgument("concurrence: input is not a density operator");

  const ComplexMatrix flip = tensor(pauli_y(), pauli_y());
  // Round-off eigenvalues would otherwise enter sqrt(rho) at the 1e-8 level.
  const HermitianEigenSystem es = eigh(rho);
  std::vector<double> roots(4);
  for (std::size_t k = 0; k < 4; ++k)
    roots[k] = es.eigenvalues[k] > concurrence_spectral_floor ? std::sqrt(es.eigenvalues[k]) : 0.0;
  const ComplexMatrix sqrt_rho =
      es.eigenvectors * ComplexMatrix::diagonal(roots) * es.eigenvectors.adjoint();
  const ComplexMatrix b = sqrt_rho * (flip * sqrt_rho.conjugate() * flip);

  // The square roots of the eigenvalues of rho * tilde are the singular values of b,
  // read off the Hermitian dilation [[0, b], [b^+, 0]] without squaring them.
  ComplexMatrix dilation(8);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      dilation(i, 4 + j) = b(i, j);
      dilation(4 + j, i) = std::conj(b(i, j));
    }
  const HermitianEigenSystem r = eigh(hermitian_part(dilation));
  std::vector<double> lambda(4);
  for (std::size_t k = 0; k < 4; ++k) lambda[k] = std::max(r.eigenvalues[7 - k], 0.0);
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

}  // namespace qspeed
