#pragma once

#include <string>
#include <vector>

#include "qspeed/cli/config.hpp"
#include "qspeed/cli/table.hpp"
#include "qspeed/trajectory.hpp"

namespace qspeed::cli {

/// Rows that failed numerically are kept, annotated in a `note` column, and
/// listed in `failures`.
struct CommandResult {
  Table table;
  std::vector<std::string> failures;

  bool failed() const { return !failures.empty(); }
};

/// |dS/dxi| at or below this is reported as no speedup.
inline constexpr double speedup_flag_tol = 1e-9;

/// Trajectory of cfg.model; the horizon covers the time grid, cfg.time and `min_horizon`.
Trajectory build_trajectory(const RunConfig& cfg, double min_horizon = 0.0);

/// speed_at of cfg's model at time t under cfg.metric.
double config_speed(const RunConfig& cfg, double t);

/// Copy of cfg with one sweep parameter set: alpha, C, Omega (= 1/gamma-ratio),
/// Gamma_over_gamma0 or t (the fixed time).
RunConfig with_parameter(RunConfig cfg, const std::string& name, double value);

/// Model, metric and parameter lines shared by every command header.
void describe_config(Table& table, const RunConfig& cfg, const std::string& command);

/// S and dS/dxi on a grid; failed points carry NaN and a note.
struct SampledCurve {
  std::vector<double> xi;
  std::vector<double> speed;
  std::vector<double> rate;
  std::vector<std::string> notes;
  std::vector<std::string> failures;
};

/// xi = t: S sampled along the trajectory, dS/dt from the samples.
SampledCurve longitudinal_curve(const RunConfig& cfg, const std::vector<double>& times);
/// xi = parameter at fixed cfg.time: S and a central difference in xi at every point.
SampledCurve transverse_curve(const RunConfig& cfg, const std::string& parameter,
                              const std::vector<double>& values);

CommandResult cmd_speed(const RunConfig& cfg);
CommandResult cmd_regions(const RunConfig& cfg);
CommandResult cmd_detect(const RunConfig& cfg);

}  // namespace qspeed::cli
