#include "qspeed/cli/figures.hpp"

#include <cmath>

#include "qspeed/analysis.hpp"
#include "qspeed/errors.hpp"
#include "qspeed/models.hpp"

namespace qspeed::cli {

namespace {

const GridSpec time_grid{1e-4, 30.0, 400};
const GridSpec omega_grid{0.02, 3.0, 300};
const GridSpec concurrence_grid{0.005, 0.999, 200};

FigureSpec time_figure(std::string id, std::string model, double ratio, double alpha,
                       bool witness, std::string caption) {
  return {std::move(id), FigureKind::time_curve, std::move(model), ratio, false, alpha, 0.0,
          time_grid, witness, std::move(caption)};
}

FigureSpec omega_figure(std::string id, double time, std::string caption) {
  return {std::move(id), FigureKind::omega_sweep, "open-1q", 1.0, false, 1.0, time,
          omega_grid, false, std::move(caption)};
}

FigureSpec concurrence_figure(std::string id, double time, std::string caption) {
  return {std::move(id), FigureKind::concurrence_sweep, "open-2q-aligned", 1.0, true, 1.0,
          time, concurrence_grid, false, std::move(caption)};
}

}  // namespace

const std::vector<FigureSpec>& figure_specs() {
  static const std::vector<FigureSpec> specs{
      time_figure("fig1a", "open-1q", 10.0, 1.0, true,
                  "single qubit, alpha = 1, memoryless bath Gamma/gamma0 = 10"),
      time_figure("fig1b", "open-1q", 0.1, 1.0, true,
                  "single qubit, alpha = 1, memory bath Gamma/gamma0 = 0.1"),
      omega_figure("fig2a", 0.0, "single qubit, alpha = 1, speed versus Omega at gamma0 t = 0"),
      omega_figure("fig2b", 1.0, "single qubit, alpha = 1, speed versus Omega at gamma0 t = 1"),
      omega_figure("fig2c", 5.0, "single qubit, alpha = 1, speed versus Omega at gamma0 t = 5"),
      omega_figure("fig2d", 10.0, "single qubit, alpha = 1, speed versus Omega at gamma0 t = 10"),
      time_figure("fig3a", "open-2q-aligned", 10.0, 1.0 / std::sqrt(2.0), false,
                  "two qubits (|11> + |00>)/sqrt 2, memoryless bath Gamma/gamma0 = 10"),
      time_figure("fig3b", "open-2q-aligned", 0.1, 1.0 / std::sqrt(2.0), false,
                  "two qubits (|11> + |00>)/sqrt 2, memory bath Gamma/gamma0 = 0.1"),
      concurrence_figure("fig4a", 1.0, "two qubits, Markovian limit, speed versus C at gamma0 t = 1"),
      concurrence_figure("fig4b", 10.0,
                         "two qubits, Markovian limit, speed versus C at gamma0 t = 10"),
  };
  return specs;
}

const FigureSpec& find_figure(std::string_view id) {
  std::string known;
  for (const auto& s : figure_specs()) {
    if (s.id == id) return s;
    known += (known.empty() ? "" : ", ") + s.id;
  }
  throw InvalidArgument("unknown figure '" + std::string(id) + "' (" + known + ")");
}

RunConfig figure_config(const FigureSpec& spec, const std::string& metric) {
  RunConfig cfg;
  cfg.model = spec.model;
  cfg.metric = metric;
  cfg.alpha = spec.alpha;
  cfg.gamma_ratio = spec.gamma_ratio;
  cfg.markovian_limit = spec.markovian_limit;
  cfg.time = spec.time;
  if (spec.kind == FigureKind::time_curve) cfg.grid = spec.grid;
  cfg.validate();
  return cfg;
}

CommandResult cmd_figure(const FigureSpec& spec, const std::string& metric) {
  const RunConfig cfg = figure_config(spec, metric);
  CommandResult r;
  describe_config(r.table, cfg, "figure " + spec.id);
  r.table.add_meta("caption", spec.caption);
  const auto xs = spec.grid.values();

  SampledCurve c;
  switch (spec.kind) {
    case FigureKind::time_curve: {
      const Trajectory traj = build_trajectory(cfg);
      const double s0 = *traj.initial_speed;
      r.table.add_meta("S0", s0);
      c = longitudinal_curve(cfg, xs);
      r.table.columns = {"t", "S_over_S0"};
      if (spec.witness_column) r.table.columns.push_back("sqrt_P");
      r.table.columns.push_back("dS_dt_over_gamma0_S0");
      const OpenSystemParams p = OpenSystemParams::lorentzian(spec.gamma_ratio, spec.alpha);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<Cell> row{xs[i], c.speed[i] / s0};
        if (spec.witness_column) row.push_back(memory_witness(p, xs[i]));
        row.push_back(c.rate[i] / s0);
        r.table.rows.push_back(std::move(row));
      }
      break;
    }
    case FigureKind::omega_sweep: {
      r.table.add_meta("time", spec.time);
      r.table.add_meta("markovian_band", "0 < Omega < 0.5");
      c = transverse_curve(cfg, "Omega", xs);
      r.table.columns = {"Omega", "S", "dS_dOmega", "markovian_band"};
      for (std::size_t i = 0; i < xs.size(); ++i)
        r.table.rows.push_back({xs[i], c.speed[i], c.rate[i], xs[i] < 0.5});
      break;
    }
    case FigureKind::concurrence_sweep: {
      r.table.add_meta("time", spec.time);
      c = transverse_curve(cfg, "C", xs);
      r.table.columns = {"C", "S_over_gamma0", "dS_dC_over_gamma0"};
      for (std::size_t i = 0; i < xs.size(); ++i)
        r.table.rows.push_back({xs[i], c.speed[i], c.rate[i]});
      break;
    }
  }
  if (!c.failures.empty()) {
    r.table.columns.push_back("note");
    for (std::size_t i = 0; i < xs.size(); ++i) r.table.rows[i].push_back(c.notes[i]);
  }
  r.failures = c.failures;
  return r;
}

}  // namespace qspeed::cli
