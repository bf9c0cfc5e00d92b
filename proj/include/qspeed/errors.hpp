#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace qspeed {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: violated precondition, unknown key, malformed configuration.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A metric that cannot be continuously extended to the boundary of the state manifold.
class MetricRejected : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// The computation was well posed but could not be completed numerically.
class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what, std::optional<double> at = std::nullopt)
      : Error(what), at_(at) {}

  /// Time or parameter value at which the failure happened, when known.
  std::optional<double> at() const { return at_; }

 private:
  std::optional<double> at_;
};

/// Iterative eigensolver exceeded its sweep budget.
class ConvergenceFailure : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// The derivative has weight on an eigenvalue pair that sits on the boundary,
/// i.e. the dynamics would increase the rank of the state.
class RankIncreaseError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// The spectral-form evaluator met (numerically) degenerate nonzero eigenvalues.
class DegenerateSpectrumError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// A quantity diverges at the requested point.
class DivergenceError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// Bracketing root search found no sign change.
class RootNotFound : public NumericalFailure {
 public:
  RootNotFound(const std::string& what, double lo, double hi)
      : NumericalFailure(what, lo), lo_(lo), hi_(hi) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

}  // namespace qspeed
