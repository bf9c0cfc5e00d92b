#pragma once

#include <span>
#include <string_view>

#include "qspeed/linalg.hpp"

namespace qspeed {

enum class MetricId { sld, wy };

/// A monotone Riemannian metric that extends continuously to the boundary of
/// the state manifold. Only the symmetric-logarithmic-derivative and
/// Wigner-Yanase metrics are constructible.
class MetricKind {
 public:
  static MetricKind sld() { return MetricKind(MetricId::sld); }
  static MetricKind wy() { return MetricKind(MetricId::wy); }

  MetricId id() const { return id_; }
  /// Pure-state prefactor: speed = epsilon * |d psi_perp / dt|.
  double epsilon() const;
  std::string_view key() const;

  friend bool operator==(const MetricKind&, const MetricKind&) = default;

 private:
  explicit MetricKind(MetricId id) : id_(id) {}
  MetricId id_;
};

/// Second eigenvalue below this marks a state as pure.
inline constexpr double pure_state_threshold = 1e-12;

/// Morozova-Chentsov function c(x, y); c(p, p) = 1/p for both metrics.
/// Throws InvalidArgument for negative arguments or x = y = 0.
double mc_function(const MetricKind& metric, double x, double y);

/// Always throws MetricRejected; the diagnostic names why `name` is not usable.
[[noreturn]] void reject_nonextendable(std::string_view name);

/// Case-insensitive "sld" | "wy". Any other key is rejected.
MetricKind parse_metric(std::string_view key);

/// epsilon * sqrt(<psi'|psi'> - |<psi|psi'>|^2) for unit psi.
double pure_state_speed(std::span<const Complex> psi, std::span<const Complex> psi_dot,
                        const MetricKind& metric);

}  // namespace qspeed
