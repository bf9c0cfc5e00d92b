#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qspeed/cli/commands.hpp"
#include "qspeed/cli/config.hpp"

namespace qspeed::cli {

enum class FigureKind {
  time_curve,         // t, S/S0, (dS/dt)/(gamma0 S0)
  omega_sweep,        // Omega, S, dS/dOmega at fixed gamma0 t
  concurrence_sweep,  // C, S/gamma0, (dS/dC)/gamma0 at fixed gamma0 t
};

struct FigureSpec {
  std::string id;
  FigureKind kind;
  std::string model;
  double gamma_ratio;  // ignored when markovian_limit
  bool markovian_limit;
  double alpha;
  double time;  // fixed gamma0 t for sweeps
  GridSpec grid;
  bool witness_column;  // adds sqrt(P_t)
  std::string caption;
};

const std::vector<FigureSpec>& figure_specs();
/// Throws InvalidArgument listing the known ids.
const FigureSpec& find_figure(std::string_view id);

/// Run configuration carrying the figure's bound parameters and the caller's metric.
RunConfig figure_config(const FigureSpec& spec, const std::string& metric);

CommandResult cmd_figure(const FigureSpec& spec, const std::string& metric);

}  // namespace qspeed::cli
