#pragma once

// Closed spin-precession and open amplitude-damping case studies.
//
// Open-system rates and times are measured in units of gamma0 (the
// Markovian-limit decay rate); closed-system times in units of 1/omega.

#include <string_view>

#include "qspeed/linalg.hpp"
#include "qspeed/trajectory.hpp"

namespace qspeed {

inline constexpr double default_closed_horizon = 20.0;
inline constexpr double default_open_horizon = 50.0;
/// |Gamma/gamma0 - 2| below this is the critical (kappa = 0) point.
inline constexpr double critical_window = 1e-12;
/// Eigenvalues of rho at or below this are treated as zero in concurrence().
inline constexpr double concurrence_spectral_floor = 1e-14;

// ---- closed systems -------------------------------------------------------

struct ClosedQubitParams {
  double omega = 1.0;
  Complex alpha = 1.0;  // amplitude on |1>
  Complex beta = 0.0;   // amplitude on |0>

  /// Real amplitudes alpha and sqrt(1 - alpha^2).
  static ClosedQubitParams from_alpha(double alpha, double omega = 1.0);
  /// Throws InvalidArgument unless omega > 0 and |alpha|^2 + |beta|^2 = 1 within 1e-12.
  void validate() const;
};

enum class TwoQubitState {
  aligned,  // alpha|11> + beta|00>
  anti,     // alpha|10> + beta|01>
};

TwoQubitState parse_two_qubit_state(std::string_view key);

struct PureStatePoint {
  ComplexVector psi;
  ComplexVector psi_dot;
};

/// |psi_t> = alpha e^{-i omega t/2}|1> + beta e^{i omega t/2}|0> and its derivative.
PureStatePoint precession_state(const ClosedQubitParams& p, double t);
PureStatePoint two_qubit_closed_state(const ClosedQubitParams& p, TwoQubitState kind, double t);

Trajectory precession_trajectory(const ClosedQubitParams& p,
                                 double horizon = default_closed_horizon);
Trajectory two_qubit_closed_trajectory(const ClosedQubitParams& p, TwoQubitState kind,
                                       double horizon = default_closed_horizon);

/// |alpha beta| omega
double precession_speed_analytic(const ClosedQubitParams& p);
/// 2|alpha beta| omega (aligned), 0 (anti)
double two_qubit_closed_speed_analytic(const ClosedQubitParams& p, TwoQubitState kind);

// ---- open systems ---------------------------------------------------------

enum class PopulationBranch { oscillatory, critical, hyperbolic, markovian };

/// Qubit coupled to a leaky vacuum cavity with Lorentzian spectral density of
/// width Gamma, prepared in alpha|1> + sqrt(1 - alpha^2)|0>.
struct OpenSystemParams {
  double gamma0 = 1.0;
  double gamma_width = 1.0;  // Gamma; unused in the Markovian limit
  double alpha = 1.0;
  bool markovian_limit = false;

  static OpenSystemParams lorentzian(double gamma_ratio, double alpha, double gamma0 = 1.0);
  static OpenSystemParams markovian(double alpha, double gamma0 = 1.0);

  void validate() const;
  /// Gamma / gamma0 (infinite in the Markovian limit).
  double gamma_ratio() const;
  /// Omega = gamma0 / Gamma (0 in the Markovian limit).
  double omega_ratio() const;
  PopulationBranch branch() const;
  /// sqrt(|2 gamma0 Gamma - Gamma^2|); real kappa on the oscillatory branch.
  double kappa() const;
};

/// Signed excited-state amplitude G_t with P_t = G_t^2.
double excited_amplitude(const OpenSystemParams& p, double t);
double excited_amplitude_dot(const OpenSystemParams& p, double t);

/// P_t = e^{-Gamma t}[cos(kappa t/2) + (Gamma/kappa) sin(kappa t/2)]^2 and its
/// hyperbolic / critical / Markovian counterparts.
double population_factor(const OpenSystemParams& p, double t);
double population_factor_dot(const OpenSystemParams& p, double t);
/// d sqrt(P_t)/dt; at a zero of P_t the right derivative.
double sqrt_population_dot(const OpenSystemParams& p, double t);

/// [[rho11 P, rho10 sqrt P], [rho01 sqrt P, 1 - rho11 P]].
ComplexMatrix amplitude_damping_evolve(const ComplexMatrix& rho0, double population);

/// Amplitude damping with survival `population` applied to every qubit
/// independently through its pair of operation elements. n_qubits in {1, 2}.
ComplexMatrix local_damping_evolve(const ComplexMatrix& rho0, double population, int n_qubits);

/// d/dt of local_damping_evolve(rho0, P_t, n) given P_t, dP_t/dt and
/// d sqrt(P_t)/dt, via the derivative of each single-qubit map.
ComplexMatrix local_damping_rate(const ComplexMatrix& rho0, double population,
                                 double population_dot, double sqrt_population_dot,
                                 int n_qubits);

/// alpha|1> + sqrt(1 - alpha^2)|0>
ComplexVector open_initial_state(double alpha);
ComplexVector two_qubit_state(double alpha, TwoQubitState kind);

Trajectory open_qubit_trajectory(const OpenSystemParams& p,
                                 double horizon = default_open_horizon);
Trajectory open_two_qubit_trajectory(const OpenSystemParams& p, TwoQubitState kind,
                                     double horizon = default_open_horizon);

/// alpha^2 sqrt(Gamma gamma0 / 2); +inf in the Markovian limit.
double open_qubit_initial_speed(const OpenSystemParams& p);
/// alpha sqrt(Gamma gamma0); +inf in the Markovian limit.
double open_two_qubit_initial_speed(const OpenSystemParams& p);

/// S = (alpha |dP/dt| / 2) sqrt((1 - (1 - alpha^2) P) / (P (1 - P))) with its
/// boundary limits.
double open_qubit_speed_analytic(const OpenSystemParams& p, double t);
/// S = alpha |dP/dt| sqrt((1 - 2P + 2P^2) / (2P(1-P)(1 - 2 alpha^2 P + 2 alpha^2 P^2))).
double open_two_qubit_speed_analytic(const OpenSystemParams& p, double t);
/// |dP/dt| / (2 sqrt(P (1 - P))) for alpha|10> + beta|01>, independent of alpha.
double open_two_qubit_anti_speed_analytic(const OpenSystemParams& p, double t);

/// Markovian-limit two-qubit speed S/gamma0 as a function of the initial
/// concurrence C and gamma0 t. Throws DivergenceError at t = 0.
double markovian_two_qubit_speed(double concurrence, double t);

/// C = 2 alpha sqrt(1 - alpha^2)
double concurrence_from_alpha(double alpha);
/// Inverse on the branch alpha in [0, 1/sqrt 2]: alpha^2 = (1 - sqrt(1 - C^2)) / 2.
double alpha_from_concurrence(double concurrence);

/// Wootters concurrence of a two-qubit density operator.
double concurrence(const ComplexMatrix& rho);

}  // namespace qspeed
