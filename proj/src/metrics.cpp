#include "qspeed/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "qspeed/errors.hpp"

namespace qspeed {

double MetricKind::epsilon() const {
  return id_ == MetricId::sld ? 1.0 : std::numbers::sqrt2;
}

std::string_view MetricKind::key() const { return id_ == MetricId::sld ? "sld" : "wy"; }

double mc_function(const MetricKind& metric, double x, double y) {
  if (!(x >= 0.0) || !(y >= 0.0))
    throw InvalidArgument("mc_function: arguments must be nonnegative");
  if (x + y <= 0.0)
    throw InvalidArgument("mc_function: c(0, 0) is singular; boundary pairs must be filtered");
  if (metric.id() == MetricId::sld) return 2.0 / (x + y);
  // (sqrt x + sqrt y)^2 rather than x + y + 2 sqrt(xy): no cancellation near the boundary.
  const double r = std::sqrt(x) + std::sqrt(y);
  return 4.0 / (r * r);
}

void reject_nonextendable(std::string_view name) {
  std::string lowered(name);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::string what = "metric '" + std::string(name) + "' rejected: ";
  if (lowered == "rld")
    what += "the right logarithmic derivative metric";
  else if (lowered == "bkm")
    what += "the Bogoliubov-Kubo-Mori metric";
  else
    what += "unknown metric; it";
  what +=
      " cannot be continuously extended to the boundary of the state manifold "
      "(valid keys: sld, wy)";
  throw MetricRejected(what);
}

MetricKind parse_metric(std::string_view key) {
  std::string lowered(key);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "sld") return MetricKind::sld();
  if (lowered == "wy") return MetricKind::wy();
  reject_nonextendable(key);
}

double pure_state_speed(std::span<const Complex> psi, std::span<const Complex> psi_dot,
                        const MetricKind& metric) {
  if (psi.size() != psi_dot.size()) throw InvalidArgument("pure_state_speed: dimension mismatch");
  const double n = norm(psi);
  if (std::abs(n - 1.0) > 1e-10) throw InvalidArgument("pure_state_speed: state is not normalized");
  // Project explicitly instead of subtracting |<psi|psi'>|^2 from <psi'|psi'>.
  const Complex along = vdot(psi, psi_dot);
  double perp2 = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) perp2 += std::norm(psi_dot[i] - along * psi[i]);
  return metric.epsilon() * std::sqrt(perp2);
}

}  // namespace qspeed
