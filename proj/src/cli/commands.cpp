#include "qspeed/cli/commands.hpp"

#include <algorithm>
#include <cmath>

#include "qspeed/analysis.hpp"
#include "qspeed/errors.hpp"
#include "qspeed/kernels.hpp"
#include "qspeed/models.hpp"
#include "qspeed/speed.hpp"

namespace qspeed::cli {

namespace {

OpenSystemParams open_params(const RunConfig& cfg) {
  const double a = cfg.effective_alpha();
  return cfg.markovian_limit ? OpenSystemParams::markovian(a)
                             : OpenSystemParams::lorentzian(cfg.gamma_ratio, a);
}

std::string describe_error(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const NumericalFailure& e) {
    return e.what();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "unknown error";
}

void note_failure(SampledCurve& c, std::size_t i, const std::exception_ptr& error) {
  c.notes[i] = describe_error(error);
  c.failures.push_back("xi = " + format_number(c.xi[i]) + ": " + c.notes[i]);
}

SampledCurve empty_curve(const std::vector<double>& xs) {
  SampledCurve c;
  c.xi = xs;
  c.speed.assign(xs.size(), NAN);
  c.rate.assign(xs.size(), NAN);
  c.notes.assign(xs.size(), "");
  return c;
}

bool any_note(const SampledCurve& c) {
  return std::any_of(c.notes.begin(), c.notes.end(), [](const auto& s) { return !s.empty(); });
}

std::string grid_text(const GridSpec& g) {
  return format_number(g.min) + ":" + format_number(g.max) + ":" + std::to_string(g.points);
}

}  // namespace

Trajectory build_trajectory(const RunConfig& cfg, double min_horizon) {
  const bool open = is_open_model(cfg.model);
  const double horizon = std::max({open ? default_open_horizon : default_closed_horizon,
                                   cfg.grid.max, cfg.time, min_horizon});
  if (open) {
    const OpenSystemParams p = open_params(cfg);
    if (cfg.model == "open-1q") return open_qubit_trajectory(p, horizon);
    if (cfg.model == "open-2q-aligned")
      return open_two_qubit_trajectory(p, TwoQubitState::aligned, horizon);
    if (cfg.model == "open-2q-anti")
      return open_two_qubit_trajectory(p, TwoQubitState::anti, horizon);
  } else {
    const auto p = ClosedQubitParams::from_alpha(cfg.effective_alpha(), cfg.omega);
    if (cfg.model == "closed-1q") return precession_trajectory(p, horizon);
    if (cfg.model == "closed-2q-aligned")
      return two_qubit_closed_trajectory(p, TwoQubitState::aligned, horizon);
    if (cfg.model == "closed-2q-anti")
      return two_qubit_closed_trajectory(p, TwoQubitState::anti, horizon);
  }
  throw InvalidArgument("unknown model '" + cfg.model + "'");
}

double config_speed(const RunConfig& cfg, double t) {
  return speed_at(build_trajectory(cfg, t), t, parse_metric(cfg.metric));
}

RunConfig with_parameter(RunConfig cfg, const std::string& name, double value) {
  if (name == "t") {
    cfg.time = value;
  } else if (name == "alpha") {
    cfg.alpha = value;
    cfg.concurrence.reset();
  } else if (name == "C") {
    cfg.concurrence = value;
  } else if (name == "Omega") {
    if (!(value > 0.0)) throw InvalidArgument("Omega must be positive");
    cfg.gamma_ratio = 1.0 / value;
  } else if (name == "Gamma_over_gamma0") {
    cfg.gamma_ratio = value;
  } else {
    throw InvalidArgument("unknown sweep parameter '" + name + "'");
  }
  return cfg;
}

void describe_config(Table& table, const RunConfig& cfg, const std::string& command) {
  table.add_meta("qspeed", QSPEED_VERSION);
  table.add_meta("command", command);
  table.add_meta("model", cfg.model);
  table.add_meta("metric", std::string(parse_metric(cfg.metric).key()));
  if (cfg.concurrence)
    table.add_meta("C", *cfg.concurrence);
  table.add_meta("alpha", cfg.effective_alpha());
  if (is_open_model(cfg.model)) {
    table.add_meta("gamma0", 1.0);
    if (cfg.markovian_limit)
      table.add_meta("markovian_limit", "true");
    else
      table.add_meta("Gamma_over_gamma0", cfg.gamma_ratio);
  } else {
    table.add_meta("omega", cfg.omega);
  }
}

SampledCurve longitudinal_curve(const RunConfig& cfg, const std::vector<double>& times) {
  SampledCurve c = empty_curve(times);
  const Trajectory traj = build_trajectory(cfg, times.empty() ? 0.0 : times.back());
  const auto values = evaluate_speeds(traj, times, parse_metric(cfg.metric));
  std::vector<double> ok_t;
  std::vector<double> ok_s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].ok()) {
      c.speed[i] = values[i].value;
      ok_t.push_back(times[i]);
      ok_s.push_back(values[i].value);
    } else {
      note_failure(c, i, values[i].error);
    }
  }
  if (ok_t.size() >= 2) {
    const auto rate = sampled_derivative(ok_t, ok_s);
    std::size_t k = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i].ok()) c.rate[i] = rate[k++];
  }
  return c;
}

SampledCurve transverse_curve(const RunConfig& cfg, const std::string& parameter,
                              const std::vector<double>& values) {
  SampledCurve c = empty_curve(values);
  const auto points = sweep_speedup(
      values, [&](double xi) { return config_speed(with_parameter(cfg, parameter, xi), cfg.time); });
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].speed.ok())
      c.speed[i] = points[i].speed.value;
    else
      note_failure(c, i, points[i].speed.error);
    if (points[i].rate.ok())
      c.rate[i] = points[i].rate.value;
    else if (c.notes[i].empty())
      note_failure(c, i, points[i].rate.error);
  }
  return c;
}

CommandResult cmd_speed(const RunConfig& cfg) {
  CommandResult r;
  describe_config(r.table, cfg, "speed");
  r.table.add_meta("time_grid", grid_text(cfg.grid));

  const Trajectory traj = build_trajectory(cfg);
  const SampledCurve c = longitudinal_curve(cfg, cfg.grid.values());
  const bool normalized = traj.initial_speed && *traj.initial_speed > 0.0;
  if (normalized) r.table.add_meta("S0", *traj.initial_speed);
  const bool notes = any_note(c);

  r.table.columns = {"t", "S", "dS_dt"};
  if (normalized) r.table.columns.push_back("S_over_S0");
  if (notes) r.table.columns.push_back("note");
  for (std::size_t i = 0; i < c.xi.size(); ++i) {
    std::vector<Cell> row{c.xi[i], c.speed[i], c.rate[i]};
    if (normalized) row.push_back(c.speed[i] / *traj.initial_speed);
    if (notes) row.push_back(c.notes[i]);
    r.table.rows.push_back(std::move(row));
  }
  r.failures = c.failures;
  return r;
}

CommandResult cmd_regions(const RunConfig& cfg) {
  CommandResult r;
  const OpenSystemParams p = open_params(cfg);
  const RegionReport report = region_report(p, cfg.n_max);
  r.table.add_meta("qspeed", QSPEED_VERSION);
  r.table.add_meta("command", "regions");
  r.table.add_meta("gamma0", 1.0);
  if (cfg.markovian_limit)
    r.table.add_meta("markovian_limit", "true");
  else
    r.table.add_meta("Gamma_over_gamma0", cfg.gamma_ratio);
  r.table.add_meta("regime", std::string(to_string(report.regime)));
  r.table.add_meta("n_max", std::to_string(report.n_max));
  if (report.memory_intervals.empty()) r.table.add_meta("intervals", "none");

  r.table.columns = {"n", "tau_n", "tau_n_prime", "tau_n_double_prime", "residual"};
  for (std::size_t i = 0; i < report.memory_intervals.size(); ++i) {
    const auto& mem = report.memory_intervals[i];
    const auto& spd = report.speedup_intervals[i];
    r.table.rows.push_back({static_cast<long long>(i + 1), mem.first, mem.second, spd.end,
                            spd.residual});
  }
  return r;
}

CommandResult cmd_detect(const RunConfig& cfg) {
  if (!cfg.sweep) throw InvalidArgument("detect requires --sweep <param>:<min>:<max>:<points>");
  const SweepSpec& sweep = *cfg.sweep;
  const bool width_sweep = sweep.parameter == "Omega" || sweep.parameter == "Gamma_over_gamma0";
  if (width_sweep && !is_open_model(cfg.model))
    throw InvalidArgument("sweep parameter " + sweep.parameter + " requires an open model");
  if (width_sweep && cfg.markovian_limit)
    throw InvalidArgument("sweep parameter " + sweep.parameter +
                          " needs a finite spectral width; drop --markovian-limit");
  if (sweep.longitudinal() && sweep.grid.min < 0.0)
    throw InvalidArgument("time sweep must start at t >= 0");

  CommandResult r;
  describe_config(r.table, cfg, "detect");
  r.table.add_meta("sweep", sweep.parameter + ":" + grid_text(sweep.grid));
  r.table.add_meta("classification", sweep.longitudinal() ? "longitudinal" : "transverse");
  if (!sweep.longitudinal()) r.table.add_meta("time", cfg.time);

  const auto xs = sweep.grid.values();
  const SampledCurve c = sweep.longitudinal() ? longitudinal_curve(cfg, xs)
                                              : transverse_curve(cfg, sweep.parameter, xs);
  const bool notes = any_note(c);
  r.table.columns = {sweep.parameter, "S", "dS_d" + sweep.parameter, "speedup"};
  if (notes) r.table.columns.push_back("note");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<Cell> row{c.xi[i], c.speed[i], c.rate[i], c.rate[i] > speedup_flag_tol};
    if (notes) row.push_back(c.notes[i]);
    r.table.rows.push_back(std::move(row));
  }
  r.failures = c.failures;
  return r;
}

}  // namespace qspeed::cli
