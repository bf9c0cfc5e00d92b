#include "qspeed/analysis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qspeed/errors.hpp"

namespace qspeed {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::markovian:
      return "markovian";
    case Regime::non_markovian:
      return "non_markovian";
    case Regime::critical:
      return "critical";
  }
  return "unknown";
}

Regime regime_classify(double ratio) {
  if (!(ratio > 0.0)) throw InvalidArgument("Gamma/gamma0 must be positive");
  if (std::abs(ratio - 2.0) <= critical_window) return Regime::critical;
  return ratio > 2.0 ? Regime::markovian : Regime::non_markovian;
}

Regime regime_of(const OpenSystemParams& p) {
  p.validate();
  return p.markovian_limit ? Regime::markovian : regime_classify(p.gamma_ratio());
}

double memory_witness(const OpenSystemParams& p, double t) {
  return std::abs(excited_amplitude(p, t));
}

double memory_witness_rate(const OpenSystemParams& p, double t) {
  return sqrt_population_dot(p, t);
}

bool memory_present(const OpenSystemParams& p, double t) { return memory_witness_rate(p, t) > 0.0; }

namespace {

void require_non_markovian(const OpenSystemParams& p, const char* who) {
  if (regime_of(p) != Regime::non_markovian)
    throw InvalidArgument(std::string(who) + ": requires the non-Markovian regime (Gamma/gamma0 < 2)");
}

void require_count(int n_max) {
  if (n_max < 0) throw InvalidArgument("n_max must be nonnegative");
}

// kappa and Gamma in units of gamma0.
struct ScaledRates {
  double kappa;
  double gamma;
};

ScaledRates scaled(const OpenSystemParams& p) {
  const double r = p.gamma_ratio();
  return {std::sqrt(2.0 * r - r * r), r};
}

}  // namespace

double speedup_boundary_residual(const OpenSystemParams& p, double t) {
  const ScaledRates s = scaled(p);
  return s.gamma * std::tan(s.kappa * t / 2.0) - s.kappa * std::tanh(s.gamma * t / 2.0);
}

std::vector<Interval> memory_boundaries(const OpenSystemParams& p, int n_max) {
  require_non_markovian(p, "memory_boundaries");
  require_count(n_max);
  const ScaledRates s = scaled(p);
  const double phase = std::atan(s.kappa / s.gamma);
  std::vector<Interval> out;
  for (int n = 1; n <= n_max; ++n) {
    const double npi = n * std::numbers::pi;
    out.emplace_back(2.0 * (npi - phase) / s.kappa, 2.0 * npi / s.kappa);
  }
  return out;
}

std::vector<SpeedupInterval> speedup_boundaries(const OpenSystemParams& p, int n_max) {
  require_non_markovian(p, "speedup_boundaries");
  require_count(n_max);
  const ScaledRates s = scaled(p);
  std::vector<SpeedupInterval> out;
  for (int n = 1; n <= n_max; ++n) {
    const double start = 2.0 * n * std::numbers::pi / s.kappa;
    double lo = start;
    double hi = (2 * n + 1) * std::numbers::pi / s.kappa - pole_guard;
    double g_lo = speedup_boundary_residual(p, lo);
    const double g_hi = speedup_boundary_residual(p, hi);
    if (!(g_lo < 0.0 && g_hi > 0.0))
      throw RootNotFound("speedup_boundaries: no sign change of Gamma tan(kappa t/2) - kappa "
                         "tanh(Gamma t/2) on [" +
                             std::to_string(lo) + ", " + std::to_string(hi) + "]",
                         lo, hi);
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
      mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double g = speedup_boundary_residual(p, mid);
      if (g == 0.0) break;
      if ((g < 0.0) == (g_lo < 0.0)) {
        lo = mid;
        g_lo = g;
      } else {
        hi = mid;
      }
    }
    const double residual = std::abs(speedup_boundary_residual(p, mid));
    if (residual > root_residual_tol)
      throw ConvergenceFailure("speedup_boundaries: residual " + std::to_string(residual) +
                                   " above tolerance at t = " + std::to_string(mid),
                               mid);
    out.push_back({start, mid, residual});
  }
  return out;
}

RegionReport region_report(const OpenSystemParams& p, int n_max) {
  require_count(n_max);
  RegionReport report{regime_of(p), p.gamma_ratio(), n_max, {}, {}};
  if (report.regime == Regime::non_markovian && n_max > 0) {
    report.memory_intervals = memory_boundaries(p, n_max);
    report.speedup_intervals = speedup_boundaries(p, n_max);
  }
  return report;
}

}  // namespace qspeed
