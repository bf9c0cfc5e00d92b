#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "qspeed/errors.hpp"
#include "qspeed/models.hpp"
#include "qspeed/speed.hpp"
#include "support/generators.hpp"

using namespace qspeed;

namespace {

struct NamedTrajectory {
  std::string name;
  Trajectory traj;
};

std::vector<NamedTrajectory> builtin_trajectories() {
  std::vector<NamedTrajectory> out;
  for (double a : {0.3, 0.8}) {
    const auto c = ClosedQubitParams::from_alpha(a, 1.3);
    out.push_back({"closed-1q", precession_trajectory(c)});
    out.push_back({"closed-2q-aligned", two_qubit_closed_trajectory(c, TwoQubitState::aligned)});
    out.push_back({"closed-2q-anti", two_qubit_closed_trajectory(c, TwoQubitState::anti)});
    for (double ratio : {0.1, 1.0, 10.0}) {
      const auto p = OpenSystemParams::lorentzian(ratio, a);
      out.push_back({"open-1q", open_qubit_trajectory(p)});
      out.push_back({"open-2q-aligned", open_two_qubit_trajectory(p, TwoQubitState::aligned)});
      out.push_back({"open-2q-anti", open_two_qubit_trajectory(p, TwoQubitState::anti)});
    }
    const auto m = OpenSystemParams::markovian(a);
    out.push_back({"open-1q markovian", open_qubit_trajectory(m)});
    out.push_back({"open-2q-aligned markovian", open_two_qubit_trajectory(m, TwoQubitState::aligned)});
  }
  return out;
}

// Nonzero eigenvalues separated enough for finite-difference eigenvectors.
bool well_separated(const ComplexMatrix& rho) {
  const auto es = eigh(rho);
  std::vector<double> active;
  for (double p : es.eigenvalues)
    if (p >= default_rank_tol) active.push_back(p);
  for (std::size_t i = 1; i < active.size(); ++i)
    if (active[i] - active[i - 1] < 1e-3) return false;
  return true;
}

}  // namespace

TEST_CASE("model trajectories are density operators with traceless derivatives") {
  for (const auto& [name, traj] : builtin_trajectories()) {
    CAPTURE(name);
    for (int i = 0; i <= 40; ++i) {
      const double t = traj.horizon * i / 40.0;
      CHECK(check_density(traj.state_at(t)).ok());
      CHECK(std::abs(traj.derivative_at(t).trace()) <= 1e-10);
      CHECK(hermitian_check(traj.derivative_at(t)));
    }
  }
}

TEST_CASE("speed is nonnegative and covariant under a fixed unitary") {
  testing::Generator gen(31337);
  const ComplexMatrix u2 = gen.unitary(2);
  const ComplexMatrix u4 = gen.unitary(4);
  for (const auto& [name, traj] : builtin_trajectories()) {
    CAPTURE(name);
    const auto rotated = conjugated(traj, traj.dim == 2 ? u2 : u4);
    for (int i = 1; i <= 25; ++i) {
      const double t = traj.horizon * i / 25.0 - 0.013;
      for (const auto m : {MetricKind::sld(), MetricKind::wy()}) {
        const double s = speed_at(traj, t, m);
        CHECK(s >= 0.0);
        CHECK(std::abs(speed_at(rotated, t, m) - s) <= 1e-10 * std::max(1.0, s));
      }
    }
  }
}

TEST_CASE("generic and spectral evaluators agree on well-separated samples") {
  int compared = 0;
  for (const auto& [name, traj] : builtin_trajectories()) {
    CAPTURE(name);
    for (int i = 1; i <= 30; ++i) {
      const double t = traj.horizon * i / 31.0;
      CAPTURE(t);
      if (!well_separated(traj.state_at(t))) continue;
      for (const auto m : {MetricKind::sld(), MetricKind::wy()}) {
        const double a = speed_at(traj, t, m);
        const double b = speed_spectral_form(traj, t, m);
        if (a < 1e-9) {
          CHECK(b < 1e-6);
        } else {
          CHECK(std::abs(a - b) <= 1e-6 * a);
        }
        ++compared;
      }
    }
  }
  CHECK(compared > 500);
}

TEST_CASE("WY is sqrt 2 times SLD on pure trajectories") {
  testing::Generator gen(12);
  for (int trial = 0; trial < 60; ++trial) {
    const auto c = ClosedQubitParams::from_alpha(gen.uniform(0.05, 0.95), gen.uniform(0.2, 3.0));
    const auto traj = trial % 2 == 0 ? precession_trajectory(c)
                                     : two_qubit_closed_trajectory(c, TwoQubitState::aligned);
    const double t = gen.uniform(0.0, traj.horizon);
    const double sld = speed_at(traj, t, MetricKind::sld());
    CHECK(std::abs(speed_at(traj, t, MetricKind::wy()) / sld - std::sqrt(2.0)) <= 1e-10);
  }
}

TEST_CASE("population factor stays in [0, 1] over a log grid of widths") {
  for (int i = 0; i <= 60; ++i) {
    const double ratio = std::pow(10.0, -2.0 + 4.0 * i / 60.0);
    const auto p = OpenSystemParams::lorentzian(ratio, 1.0);
    for (int k = 0; k <= 500; ++k) {
      const double v = population_factor(p, 50.0 * k / 500.0);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("branches join continuously at the critical width") {
  const double eps = 1e-8;
  const auto below = OpenSystemParams::lorentzian(2.0 - eps, 1.0);
  const auto at = OpenSystemParams::lorentzian(2.0, 1.0);
  const auto above = OpenSystemParams::lorentzian(2.0 + eps, 1.0);
  for (int k = 0; k <= 200; ++k) {
    const double t = 20.0 * k / 200.0;
    CHECK(std::abs(population_factor(below, t) - population_factor(at, t)) <= 1e-6);
    CHECK(std::abs(population_factor(above, t) - population_factor(at, t)) <= 1e-6);
    CHECK(std::abs(population_factor_dot(below, t) - population_factor_dot(at, t)) <= 1e-6);
    CHECK(std::abs(population_factor_dot(above, t) - population_factor_dot(at, t)) <= 1e-6);
  }
}

TEST_CASE("P' matches a central difference everywhere sampled") {
  const double h = 1e-6;
  std::vector<OpenSystemParams> params{OpenSystemParams::markovian(1.0)};
  for (double r : {0.01, 0.1, 0.5, 1.0, 1.9, 2.0, 2.1, 5.0, 10.0, 100.0})
    params.push_back(OpenSystemParams::lorentzian(r, 1.0));
  for (const auto& p : params) {
    for (int k = 0; k <= 400; ++k) {
      const double t = 50.0 * k / 400.0 + 2 * h;
      const double fd = (population_factor(p, t + h) - population_factor(p, t - h)) / (2 * h);
      CHECK(std::abs(population_factor_dot(p, t) - fd) <= 1e-7);
    }
  }
}

TEST_CASE("damping channel keeps trace and positivity") {
  testing::Generator gen(2718);
  for (int trial = 0; trial < 1000; ++trial) {
    const ComplexMatrix rho = gen.density(2);
    for (int k = 0; k <= 10; ++k) {
      const double p = k / 10.0;
      const ComplexMatrix out = amplitude_damping_evolve(rho, p);
      CHECK(std::abs(out.trace() - 1.0) <= 1e-15);
      CHECK(eigh(out).eigenvalues.front() >= -1e-12);
    }
  }
}

TEST_CASE("pair channel reproduces the closed-form evolved state") {
  for (int i = 0; i <= 20; ++i)
    for (int k = 0; k <= 20; ++k) {
      const double a = i / 20.0, p = k / 20.0;
      const double b = std::sqrt(1 - a * a);
      const ComplexMatrix rho =
          local_damping_evolve(ComplexMatrix::projector(two_qubit_state(a, TwoQubitState::aligned)), p, 2);
      ComplexMatrix expected(4);
      expected(0, 0) = a * a * p * p;
      expected(1, 1) = a * a * p * (1 - p);
      expected(2, 2) = a * a * p * (1 - p);
      expected(3, 3) = 1 - 2 * a * a * p + a * a * p * p;
      expected(0, 3) = expected(3, 0) = a * b * p;
      CHECK((rho - expected).max_abs() <= 1e-12);
    }
}

TEST_CASE("anti-aligned pair speed does not depend on alpha") {
  for (double ratio : {0.1, 1.0, 10.0}) {
    for (double t : {0.3, 2.0, 7.5}) {
      double lo = INFINITY, hi = -INFINITY;
      for (int i = 1; i <= 9; ++i) {
        const auto p = OpenSystemParams::lorentzian(ratio, i / 10.0);
        const double s = speed_at(open_two_qubit_trajectory(p, TwoQubitState::anti), t,
                                  MetricKind::sld());
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      CHECK(hi - lo <= 1e-10);
    }
  }
}

TEST_CASE("concurrence of the aligned pure state is 2 alpha beta") {
  for (int i = 0; i <= 50; ++i) {
    const double a = i / 50.0;
    const double c = concurrence(ComplexMatrix::projector(two_qubit_state(a, TwoQubitState::aligned)));
    CHECK(std::abs(c - 2 * a * std::sqrt(1 - a * a)) <= 1e-10);
  }
}

TEST_CASE("Markovian pair speed increases with concurrence") {
  for (double t : {1.0, 10.0}) {
    double prev = -1.0;
    for (int i = 0; i <= 2000; ++i) {
      const double c = 0.05 + (0.999 - 0.05) * i / 2000.0;
      const double s = markovian_two_qubit_speed(c, t);
      CHECK(s > prev);
      prev = s;
    }
  }
}
