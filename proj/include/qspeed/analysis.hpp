#pragma once

// Memory and speedup regions of the damped qubit.
//
// All times are dimensionless gamma0 t; kappa and Gamma are taken in units of gamma0.

#include <string_view>
#include <utility>
#include <vector>

#include "qspeed/models.hpp"

namespace qspeed {

enum class Regime { markovian, non_markovian, critical };

std::string_view to_string(Regime r);

/// > 2 markovian, < 2 non_markovian, within critical_window of 2 critical.
Regime regime_classify(double gamma_over_gamma0);
Regime regime_of(const OpenSystemParams& p);

/// sqrt(P_t) = |G_t|.
double memory_witness(const OpenSystemParams& p, double t);
/// d sqrt(P_t)/dt; positive while memory effects are present.
double memory_witness_rate(const OpenSystemParams& p, double t);
bool memory_present(const OpenSystemParams& p, double t);

/// g(t) = Gamma tan(kappa t/2) - kappa tanh(Gamma t/2), in gamma0 units.
double speedup_boundary_residual(const OpenSystemParams& p, double t);

using Interval = std::pair<double, double>;

/// (tau_n, tau_n') for n = 1..n_max:
///   tau_n = 2(n pi - arctan(kappa/Gamma))/kappa,  tau_n' = 2 n pi/kappa.
/// Throws InvalidArgument outside the non-Markovian regime.
std::vector<Interval> memory_boundaries(const OpenSystemParams& p, int n_max);

struct SpeedupInterval {
  double start;     // tau_n'
  double end;       // tau_n''
  double residual;  // |g(tau_n'')|
};

/// (tau_n', tau_n'') with tau_n'' the bisection root of g on
/// (2n pi/kappa, (2n+1) pi/kappa). Throws RootNotFound without a sign change.
std::vector<SpeedupInterval> speedup_boundaries(const OpenSystemParams& p, int n_max);

inline constexpr double root_residual_tol = 1e-10;
inline constexpr double pole_guard = 1e-9;

struct RegionReport {
  Regime regime;
  double gamma_ratio;
  int n_max;
  std::vector<Interval> memory_intervals;
  std::vector<SpeedupInterval> speedup_intervals;
};

/// Regime plus both interval lists; lists are empty unless non-Markovian.
RegionReport region_report(const OpenSystemParams& p, int n_max);

}  // namespace qspeed
