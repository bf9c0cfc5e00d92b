#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qspeed/cli/commands.hpp"
#include "qspeed/cli/config.hpp"
#include "qspeed/cli/figures.hpp"
#include "qspeed/errors.hpp"

namespace {

constexpr int exit_usage = 2;
constexpr int exit_numerical = 3;

// Flag values are read only when the flag was given, so the config file can fill the rest.
struct FlagStore {
  std::string config_path;
  std::string model, metric, sweep, format, out;
  double alpha = 0, concurrence = 0, omega = 0, gamma_ratio = 0, time = 0, tmin = 0, tmax = 0;
  int points = 0, n_max = 0;
  std::vector<std::pair<CLI::Option*, std::function<void(qspeed::cli::ConfigValues&)>>> readers;
  CLI::Option* markovian = nullptr;

  template <class T>
  void add(CLI::App* app, const std::string& name, T& slot, std::optional<T> qspeed::cli::ConfigValues::*field,
           const std::string& help) {
    CLI::Option* opt = app->add_option(name, slot, help);
    readers.emplace_back(opt, [&slot, field](qspeed::cli::ConfigValues& v) { v.*field = slot; });
  }

  void attach(CLI::App* app, bool with_grid, bool with_sweep) {
    using V = qspeed::cli::ConfigValues;
    app->add_option("--config", config_path, "JSON config file; flags override its keys");
    add(app, "--model", model, &V::model,
        "closed-1q | closed-2q-aligned | closed-2q-anti | open-1q | open-2q-aligned | open-2q-anti");
    add(app, "--metric", metric, &V::metric, "sld | wy");
    add(app, "--alpha", alpha, &V::alpha, "initial amplitude alpha in [0, 1]");
    add(app, "--concurrence,-C", concurrence, &V::concurrence,
        "initial concurrence C (sets alpha <= 1/sqrt 2)");
    add(app, "--omega", omega, &V::omega, "closed-model level splitting");
    add(app, "--gamma-ratio", gamma_ratio, &V::gamma_ratio, "spectral width Gamma/gamma0");
    markovian = app->add_flag("--markovian-limit", "Gamma -> infinity, P_t = exp(-gamma0 t)");
    add(app, "--time", time, &V::time, "fixed time for transverse sweeps");
    if (with_grid) {
      add(app, "--tmin", tmin, &V::tmin, "first grid time");
      add(app, "--tmax", tmax, &V::tmax, "last grid time");
      add(app, "--points", points, &V::points, "grid points (>= 2)");
    }
    if (with_sweep) add(app, "--sweep", sweep, &V::sweep, "<param>:<min>:<max>:<points>");
    add(app, "--n-max", n_max, &V::n_max, "intervals to report (regions)");
    add(app, "--format", format, &V::format, "csv | json");
    add(app, "--out", out, &V::out, "output path (default stdout)");
  }

  qspeed::cli::ConfigValues values() const {
    qspeed::cli::ConfigValues v;
    for (const auto& [opt, read] : readers)
      if (opt->count() > 0) read(v);
    if (markovian && markovian->count() > 0) v.markovian_limit = true;
    return v;
  }
};

qspeed::cli::RunConfig resolve(const FlagStore& flags) {
  qspeed::cli::ConfigValues file;
  if (!flags.config_path.empty()) file = qspeed::cli::load_config_file(flags.config_path);
  return qspeed::cli::resolve_config(file, flags.values());
}

int emit(const qspeed::cli::CommandResult& result, const qspeed::cli::RunConfig& cfg) {
  const std::string text = qspeed::cli::render(result.table, cfg.format);
  if (cfg.out.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw qspeed::InvalidArgument("cannot write output file '" + cfg.out + "'");
    f << text;
  }
  if (!result.failed()) return 0;
  for (const auto& msg : result.failures) std::cerr << "qspeed: numerical failure at " << msg << "\n";
  return exit_numerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Speed of quantum evolution under the SLD and Wigner-Yanase metrics", "qspeed"};
  app.set_version_flag("--version", QSPEED_VERSION);
  app.require_subcommand(1);

  FlagStore speed_flags, figure_flags, regions_flags, detect_flags;
  std::string figure_id;

  auto* speed = app.add_subcommand("speed", "speed curve S(t) and dS/dt on a time grid");
  speed_flags.attach(speed, true, false);
  auto* figure = app.add_subcommand("figure", "reproduce a figure as a table (fig1a .. fig4b)");
  figure->add_option("id", figure_id, "figure id")->required();
  figure->add_option("--metric", figure_flags.metric, "sld | wy");
  figure->add_option("--format", figure_flags.format, "csv | json");
  figure->add_option("--out", figure_flags.out, "output path (default stdout)");
  auto* regions = app.add_subcommand("regions", "memory and speedup intervals of the damped qubit");
  regions_flags.attach(regions, false, false);
  auto* detect = app.add_subcommand("detect", "speedup detection along a parameter sweep");
  detect_flags.attach(detect, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (speed->parsed()) {
      const auto cfg = resolve(speed_flags);
      return emit(qspeed::cli::cmd_speed(cfg), cfg);
    }
    if (figure->parsed()) {
      qspeed::cli::ConfigValues v;
      if (!figure_flags.metric.empty()) v.metric = figure_flags.metric;
      if (!figure_flags.format.empty()) v.format = figure_flags.format;
      if (!figure_flags.out.empty()) v.out = figure_flags.out;
      const auto cfg = qspeed::cli::resolve_config({}, v);
      const auto& spec = qspeed::cli::find_figure(figure_id);
      return emit(qspeed::cli::cmd_figure(spec, cfg.metric), cfg);
    }
    if (regions->parsed()) {
      const auto cfg = resolve(regions_flags);
      return emit(qspeed::cli::cmd_regions(cfg), cfg);
    }
    if (detect->parsed()) {
      const auto cfg = resolve(detect_flags);
      return emit(qspeed::cli::cmd_detect(cfg), cfg);
    }
  } catch (const qspeed::InvalidArgument& e) {
    std::cerr << "qspeed: " << e.what() << "\n";
    return exit_usage;
  } catch (const qspeed::NumericalFailure& e) {
    std::cerr << "qspeed: numerical failure";
    if (e.at()) std::cerr << " at " << *e.at();
    std::cerr << ": " << e.what() << "\n";
    return exit_numerical;
  }
  return exit_usage;
}
