#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "qspeed/errors.hpp"
#include "qspeed/kernels.hpp"
#include "qspeed/models.hpp"

using namespace qspeed;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("parallel speed curve equals the serial reference bit for bit") {
  const auto grid = linspace(1e-4, 30.0, 257);
  for (const auto& traj :
       {open_qubit_trajectory(OpenSystemParams::lorentzian(0.1, 0.7)),
        open_two_qubit_trajectory(OpenSystemParams::lorentzian(0.1, 0.6), TwoQubitState::aligned),
        precession_trajectory(ClosedQubitParams::from_alpha(0.3, 2.0), 30.0)}) {
    for (const auto m : {MetricKind::sld(), MetricKind::wy()}) {
      const auto a = speed_curve(traj, grid, m);
      const auto b = speed_curve_serial(traj, grid, m);
      REQUIRE(a.samples.size() == b.samples.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(same_bits(a.samples[i].speed, b.samples[i].speed));
        CHECK(same_bits(a.samples[i].speed_rate, b.samples[i].speed_rate));
      }
    }
  }
}

TEST_CASE("parallel sweep equals the serial reference bit for bit") {
  const auto xs = linspace(0.05, 2.5, 64);
  auto s_of_omega = [](double omega) {
    const auto p = OpenSystemParams::lorentzian(1.0 / omega, 1.0);
    return speed_at(open_qubit_trajectory(p), 5.0, MetricKind::sld());
  };
  const auto a = sweep_speedup(xs, s_of_omega);
  const auto b = sweep_speedup_serial(xs, s_of_omega);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    REQUIRE(a[i].speed.ok());
    REQUIRE(a[i].rate.ok());
    CHECK(same_bits(a[i].speed.value, b[i].speed.value));
    CHECK(same_bits(a[i].rate.value, b[i].rate.value));
  }
}

TEST_CASE("per-point failures are captured and rethrown in grid order") {
  const std::vector<double> xs{0.0, 1.0, 2.0, 3.0};
  auto f = [](double x) -> double {
    if (x == 1.0) throw RankIncreaseError("first", x);
    if (x == 3.0) throw DivergenceError("second", x);
    return x * x;
  };
  for (const auto& values : {evaluate_grid(xs, f), evaluate_grid_serial(xs, f)}) {
    CHECK(values[0].ok());
    CHECK(values[2].value == 4.0);
    CHECK_FALSE(values[1].ok());
    CHECK(std::isnan(values[1].value));
    CHECK_THROWS_AS(rethrow_first_error(values), RankIncreaseError);
  }
  CHECK(kernel_threads() >= 1);
}

TEST_CASE("speed_curve rethrows the offending time") {
  Trajectory traj;
  traj.dim = 2;
  traj.horizon = 2.0;
  traj.state_at = [](double t) {
    const double d[] = {std::max(0.0, t - 1.0), 1.0 - std::max(0.0, t - 1.0)};
    return ComplexMatrix::diagonal(d);
  };
  traj.derivative_at = [](double t) {
    const double r = t >= 1.0 ? 1.0 : 0.0;
    const double d[] = {r, -r};
    return ComplexMatrix::diagonal(d);
  };
  const std::vector<double> grid{0.5, 1.0, 1.5};
  try {
    speed_curve(traj, grid, MetricKind::sld());
    FAIL("expected RankIncreaseError");
  } catch (const RankIncreaseError& e) {
    CHECK(e.at().value() == 1.0);
  }
}
