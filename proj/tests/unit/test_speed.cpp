#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracle/oracle_values.hpp"
#include "qspeed/errors.hpp"
#include "qspeed/models.hpp"
#include "qspeed/speed.hpp"
#include "support/generators.hpp"

using namespace qspeed;

namespace {

// Straight line between two full-rank states, no analytic derivative.
Trajectory mixing_trajectory(const ComplexMatrix& a, const ComplexMatrix& b) {
  Trajectory traj;
  traj.dim = a.dim();
  traj.horizon = 1.0;
  traj.state_at = [a, b](double t) {
    const double s = 0.5 * (1.0 + std::sin(3.0 * t)) * 0.9 + 0.05;
    return (1.0 - s) * a + s * b;
  };
  return traj;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

TEST_CASE("rho_dot") {
  SUBCASE("stationary trajectory has zero derivative") {
    testing::Generator gen(1);
    const auto traj = stationary_trajectory(gen.density(3), 5.0);
    CHECK(rho_dot(traj, 1.0).max_abs() == 0.0);
    CHECK(rho_dot(traj.without_derivative(), 1.0).max_abs() < 1e-10);
  }
  SUBCASE("finite differences match the analytic closed-qubit derivative") {
    const auto traj = precession_trajectory(ClosedQubitParams::from_alpha(0.6, 1.3));
    for (double t : {0.0, 0.4, 7.0, 20.0}) {
      const ComplexMatrix exact = rho_dot(traj, t);
      const ComplexMatrix fd = rho_dot(traj.without_derivative(), t, 1e-5);
      CHECK((exact - fd).max_abs() <= 1e-8);
    }
  }
  SUBCASE("damped-qubit population entry moves with P'") {
    const auto p = OpenSystemParams::lorentzian(0.1, 0.8);
    const auto traj = open_qubit_trajectory(p).without_derivative();
    for (double t : {0.5, 3.0, 11.0}) {
      const ComplexMatrix d = rho_dot(traj, t);
      CHECK(std::abs(d(0, 0).real() - 0.64 * population_factor_dot(p, t)) <= 1e-8);
    }
  }
  SUBCASE("invalid inputs") {
    const auto traj = precession_trajectory(ClosedQubitParams{});
    CHECK_THROWS_AS(rho_dot(traj, 1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(rho_dot(traj, -0.1), InvalidArgument);
    CHECK_THROWS_AS(rho_dot(traj, 21.0), InvalidArgument);
  }
}

TEST_CASE("speed_at reference points") {
  const auto closed = precession_trajectory({1.0, 0.6, 0.8});
  for (double t : {0.0, 1.0, 13.0})
    CHECK(speed_at(closed, t, MetricKind::sld()) == doctest::Approx(0.48).epsilon(1e-12));

  testing::Generator gen(2);
  CHECK(speed_at(stationary_trajectory(gen.density(2), 1.0), 0.5, MetricKind::wy()) == 0.0);

  const auto markov = open_qubit_trajectory(OpenSystemParams::markovian(1.0));
  CHECK(speed_at(markov, 1.0, MetricKind::sld()) ==
        doctest::Approx(oracle::markovian_qubit_speed_t1).epsilon(1e-12));
}

TEST_CASE("speed_at on mixed oracle points") {
  for (const auto& pt : oracle::qubit_points) {
    const auto traj = open_qubit_trajectory(OpenSystemParams::lorentzian(pt.gamma_ratio, pt.alpha));
    CHECK(speed_at(traj, pt.t, MetricKind::sld()) == doctest::Approx(pt.sld).epsilon(1e-10));
    CHECK(speed_at(traj, pt.t, MetricKind::wy()) == doctest::Approx(pt.wy).epsilon(1e-10));
  }
  for (const auto& pt : oracle::pair_points) {
    const auto traj = open_two_qubit_trajectory(
        OpenSystemParams::lorentzian(pt.gamma_ratio, pt.alpha), TwoQubitState::aligned);
    CHECK(speed_at(traj, pt.t, MetricKind::sld()) == doctest::Approx(pt.sld).epsilon(1e-10));
    CHECK(speed_at(traj, pt.t, MetricKind::wy()) == doctest::Approx(pt.wy).epsilon(1e-10));
  }
}

TEST_CASE("speed_at reports the t -> 0 limit when advertised") {
  const auto p = OpenSystemParams::lorentzian(10.0, 1.0);
  CHECK(speed_at(open_qubit_trajectory(p), 0.0, MetricKind::sld()) ==
        doctest::Approx(oracle::qubit_s0_ratio_10).epsilon(1e-14));
}

TEST_CASE("rank increase is an error carrying t") {
  Trajectory traj;
  traj.dim = 2;
  traj.horizon = 1.0;
  traj.state_at = [](double t) {
    const double d[] = {t, 1.0 - t};
    return ComplexMatrix::diagonal(d);
  };
  traj.derivative_at = [](double) {
    const double d[] = {1.0, -1.0};
    return ComplexMatrix::diagonal(d);
  };
  try {
    speed_at(traj, 0.0, MetricKind::sld());
    FAIL("expected RankIncreaseError");
  } catch (const RankIncreaseError& e) {
    REQUIRE(e.at().has_value());
    CHECK(*e.at() == 0.0);
  }
  CHECK(speed_at(traj, 0.5, MetricKind::sld()) > 0.0);
}

TEST_CASE("pure states give the same speed through either path") {
  const auto traj = two_qubit_closed_trajectory(ClosedQubitParams::from_alpha(0.3, 1.7),
                                                TwoQubitState::aligned);
  SpeedOptions generic;
  generic.route_pure_states = false;
  for (double t : {0.0, 2.0, 9.5}) {
    const auto s = two_qubit_closed_state(ClosedQubitParams::from_alpha(0.3, 1.7),
                                          TwoQubitState::aligned, t);
    const double pure = pure_state_speed(s.psi, s.psi_dot, MetricKind::sld());
    CHECK(std::abs(speed_at(traj, t, MetricKind::sld(), generic) - pure) <= 1e-8);
    CHECK(std::abs(speed_at(traj, t, MetricKind::sld()) - pure) <= 1e-8);
  }
}

TEST_CASE("spectral form") {
  SUBCASE("diagonal trajectory reduces to the eigenvalue term") {
    Trajectory traj;
    traj.dim = 3;
    traj.horizon = 2.0;
    traj.state_at = [](double t) {
      const double d[] = {0.2 + 0.1 * t, 0.5 - 0.05 * t, 0.3 - 0.05 * t};
      return ComplexMatrix::diagonal(d);
    };
    const double t = 0.7;
    const double q = 0.1 / (2 * std::sqrt(0.27)), r = 0.05 / (2 * std::sqrt(0.465)),
                 s = 0.05 / (2 * std::sqrt(0.265));
    CHECK(speed_spectral_form(traj, t, MetricKind::sld()) ==
          doctest::Approx(std::sqrt(q * q + r * r + s * s)).epsilon(1e-8));
  }
  SUBCASE("anti-aligned pair") {
    const auto p = OpenSystemParams::lorentzian(1.0, 0.4);
    const auto traj = open_two_qubit_trajectory(p, TwoQubitState::anti);
    CHECK(speed_spectral_form(traj, 2.0, MetricKind::sld()) ==
          doctest::Approx(oracle::anti_pair_ratio_1_t2).epsilon(1e-8));
  }
  SUBCASE("random mixing trajectories agree with the generic evaluator") {
    testing::Generator gen(99);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t dim = 2 + gen.index(3);
      const auto traj = mixing_trajectory(gen.density(dim, 0.02), gen.density(dim, 0.02));
      const double t = gen.uniform(0.1, 0.9);
      for (const auto m : {MetricKind::sld(), MetricKind::wy()}) {
        const double a = speed_at(traj, t, m);
        const double b = speed_spectral_form(traj, t, m);
        CHECK(std::abs(a - b) <= 1e-6 * a);
      }
    }
  }
  SUBCASE("degenerate nonzero spectrum is refused") {
    const auto traj = open_two_qubit_trajectory(OpenSystemParams::lorentzian(1.0, 0.6),
                                                TwoQubitState::aligned);
    CHECK_THROWS_AS(speed_spectral_form(traj, 1.0, MetricKind::sld()), DegenerateSpectrumError);
  }
}

TEST_CASE("speedup_measure") {
  const auto closed = precession_trajectory(ClosedQubitParams::from_alpha(0.6));
  CHECK(std::abs(speedup_measure([&](double t) { return speed_at(closed, t, MetricKind::sld()); },
                                 3.0)) <= 1e-10);

  const double omega = 1.4;
  auto aligned_speed = [&](double c) {
    const auto p = ClosedQubitParams::from_alpha(alpha_from_concurrence(c), omega);
    return speed_at(two_qubit_closed_trajectory(p, TwoQubitState::aligned), 1.0,
                    MetricKind::sld());
  };
  for (double c : {0.1, 0.5, 0.9})
    CHECK(speedup_measure(aligned_speed, c) == doctest::Approx(omega).epsilon(1e-6));

  auto alpha_speed = [](double a) {
    return speed_at(precession_trajectory(ClosedQubitParams::from_alpha(a)), 0.5,
                    MetricKind::sld());
  };
  CHECK(std::abs(speedup_measure(alpha_speed, 1.0 / std::sqrt(2.0))) <= 1e-8);
  CHECK_THROWS_AS(speedup_measure(alpha_speed, 0.5, -1.0), InvalidArgument);
  CHECK(default_parameter_step(0.3) == 1e-5);
  CHECK(default_parameter_step(-40.0) == doctest::Approx(4e-4));
}

TEST_CASE("sampled_derivative is exact for quadratics on uneven grids") {
  const std::vector<double> x{0.0, 0.1, 0.35, 0.4, 1.0};
  std::vector<double> y;
  for (double v : x) y.push_back(3 * v * v - v + 2);
  const auto d = sampled_derivative(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(d[i] == doctest::Approx(6 * x[i] - 1));

  const std::vector<double> x2{0.0, 2.0}, y2{1.0, 5.0};
  const auto d2 = sampled_derivative(x2, y2);
  CHECK(d2[0] == 2.0);
  CHECK(d2[1] == 2.0);
  CHECK_THROWS_AS(sampled_derivative(std::vector<double>{1.0}, std::vector<double>{1.0}),
                  InvalidArgument);
}

TEST_CASE("speed_curve") {
  SUBCASE("closed qubit is flat") {
    const auto traj = precession_trajectory({1.0, 0.6, 0.8});
    const auto grid = linspace(0.0, 10.0, 11);
    const auto curve = speed_curve(traj, grid, MetricKind::wy());
    for (const auto& s : curve.samples) {
      CHECK(s.speed == doctest::Approx(0.48 * std::sqrt(2.0)).epsilon(1e-12));
      CHECK(std::abs(s.speed_rate) <= 1e-8);
    }
  }
  SUBCASE("two-point grid") {
    const auto traj = open_qubit_trajectory(OpenSystemParams::lorentzian(1.0, 1.0));
    const std::vector<double> grid{1.0, 2.0};
    const auto curve = speed_curve(traj, grid, MetricKind::sld());
    REQUIRE(curve.samples.size() == 2);
    CHECK(curve.samples[0].speed_rate == curve.samples[1].speed_rate);
  }
  SUBCASE("memoryless bath decreases monotonically") {
    const auto traj = open_qubit_trajectory(OpenSystemParams::lorentzian(10.0, 1.0));
    const auto grid = linspace(0.01, 10.0, 200);
    const auto curve = speed_curve(traj, grid, MetricKind::sld());
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) CHECK(curve.samples[i].speed_rate < 0.0);
  }
  SUBCASE("grid validation and error location") {
    const auto traj = precession_trajectory({});
    CHECK_THROWS_AS(speed_curve(traj, std::vector<double>{1.0}, MetricKind::sld()), InvalidArgument);
    CHECK_THROWS_AS(speed_curve(traj, std::vector<double>{1.0, 1.0}, MetricKind::sld()),
                    InvalidArgument);
  }
}

TEST_CASE("curve length converges at second order") {
  const auto traj = open_qubit_trajectory(OpenSystemParams::lorentzian(10.0, 0.7));
  auto length = [&](int n) {
    return curve_length(speed_curve(traj, linspace(0.1, 5.0, n), MetricKind::sld()));
  };
  const double reference = length(6400);
  const double e200 = std::abs(length(200) - reference);
  const double e400 = std::abs(length(400) - reference);
  CHECK(std::log2(e200 / e400) >= 1.9);
}
