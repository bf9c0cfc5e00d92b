#include "qspeed/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <type_traits>

#include "qspeed/errors.hpp"
#include "qspeed/metrics.hpp"
#include "qspeed/models.hpp"

namespace qspeed::cli {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw InvalidArgument("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  return v;
}

int parse_int(std::string_view text, std::string_view what) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw InvalidArgument("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  return v;
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "Gamma_over_gamma0") return "gamma_ratio";
  if (key == "C") return "concurrence";
  return key;
}

template <class T>
T json_value(const nlohmann::json& v, const std::string& key) {
  if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
    if (!v.is_number_integer())
      throw InvalidArgument("config key '" + key + "' must be an integer");
  }
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument("config key '" + key + "' has the wrong type");
  }
}

template <class T>
void overlay(std::optional<T>& dst, const std::optional<T>& src) {
  if (src) dst = src;
}

}  // namespace

OutputFormat parse_format(std::string_view key) {
  if (key == "csv") return OutputFormat::csv;
  if (key == "json") return OutputFormat::json;
  throw InvalidArgument("unknown format '" + std::string(key) + "' (csv, json)");
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

void GridSpec::validate(std::string_view what) const {
  if (points < 2)
    throw InvalidArgument(std::string(what) + ": grid needs at least 2 points");
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
    throw InvalidArgument(std::string(what) + ": grid requires min < max");
}

std::vector<double> GridSpec::values() const {
  std::vector<double> v(static_cast<std::size_t>(points));
  const double step = (max - min) / (points - 1);
  for (int i = 0; i < points; ++i) v[i] = min + step * i;
  v.back() = max;
  return v;
}

SweepSpec parse_sweep(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() != 4)
    throw InvalidArgument("sweep must look like <param>:<min>:<max>:<points>, got '" +
                          std::string(text) + "'");
  SweepSpec s;
  s.parameter = std::string(parts[0]);
  if (std::find(sweep_parameters.begin(), sweep_parameters.end(), s.parameter) ==
      sweep_parameters.end())
    throw InvalidArgument("unknown sweep parameter '" + s.parameter + "' (" +
                          join(sweep_parameters) + ")");
  s.grid = {parse_double(parts[1], "sweep min"), parse_double(parts[2], "sweep max"),
            parse_int(parts[3], "sweep points")};
  s.grid.validate("sweep");
  return s;
}

bool is_open_model(std::string_view model) { return model.starts_with("open-"); }

ConfigValues config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidArgument("config file must hold a JSON object");
  ConfigValues c;
  for (const auto& [raw, v] : doc.items()) {
    const std::string key = normalize_key(raw);
    if (key == "model")
      c.model = json_value<std::string>(v, raw);
    else if (key == "metric")
      c.metric = json_value<std::string>(v, raw);
    else if (key == "alpha")
      c.alpha = json_value<double>(v, raw);
    else if (key == "concurrence")
      c.concurrence = json_value<double>(v, raw);
    else if (key == "omega")
      c.omega = json_value<double>(v, raw);
    else if (key == "gamma_ratio")
      c.gamma_ratio = json_value<double>(v, raw);
    else if (key == "markovian_limit")
      c.markovian_limit = json_value<bool>(v, raw);
    else if (key == "time")
      c.time = json_value<double>(v, raw);
    else if (key == "tmin")
      c.tmin = json_value<double>(v, raw);
    else if (key == "tmax")
      c.tmax = json_value<double>(v, raw);
    else if (key == "points")
      c.points = json_value<int>(v, raw);
    else if (key == "sweep")
      c.sweep = json_value<std::string>(v, raw);
    else if (key == "format")
      c.format = json_value<std::string>(v, raw);
    else if (key == "out")
      c.out = json_value<std::string>(v, raw);
    else if (key == "n_max")
      c.n_max = json_value<int>(v, raw);
    else
      throw InvalidArgument("unknown config key '" + raw + "'");
  }
  return c;
}

ConfigValues load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(doc);
}

double RunConfig::effective_alpha() const {
  return concurrence ? alpha_from_concurrence(*concurrence) : alpha;
}

void RunConfig::validate() const {
  if (std::find(model_keys.begin(), model_keys.end(), model) == model_keys.end())
    throw InvalidArgument("unknown model '" + model + "' (" + join(model_keys) + ")");
  parse_metric(metric);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
  if (concurrence && !(*concurrence >= 0.0 && *concurrence <= 1.0))
    throw InvalidArgument("C must lie in [0, 1]");
  if (!(omega > 0.0)) throw InvalidArgument("omega must be positive");
  if (!(gamma_ratio > 0.0) || !std::isfinite(gamma_ratio))
    throw InvalidArgument("gamma-ratio must be positive");
  if (!(time >= 0.0)) throw InvalidArgument("time must be nonnegative");
  grid.validate("time grid");
  if (grid.min < 0.0) throw InvalidArgument("time grid: tmin must be nonnegative");
  if (n_max < 0) throw InvalidArgument("n-max must be nonnegative");
}

RunConfig resolve_config(const ConfigValues& file, const ConfigValues& flags) {
  ConfigValues merged = file;
  // alpha and C describe the same amplitude; the layer that sets either one wins.
  if (flags.alpha || flags.concurrence) {
    merged.alpha = flags.alpha;
    merged.concurrence = flags.concurrence;
  }
  if (merged.alpha && merged.concurrence)
    throw InvalidArgument("alpha and C are mutually exclusive");
  overlay(merged.model, flags.model);
  overlay(merged.metric, flags.metric);
  overlay(merged.omega, flags.omega);
  overlay(merged.gamma_ratio, flags.gamma_ratio);
  overlay(merged.markovian_limit, flags.markovian_limit);
  overlay(merged.time, flags.time);
  overlay(merged.tmin, flags.tmin);
  overlay(merged.tmax, flags.tmax);
  overlay(merged.points, flags.points);
  overlay(merged.sweep, flags.sweep);
  overlay(merged.format, flags.format);
  overlay(merged.out, flags.out);
  overlay(merged.n_max, flags.n_max);

  RunConfig rc;
  if (merged.model) rc.model = *merged.model;
  if (merged.metric) rc.metric = *merged.metric;
  if (merged.alpha) rc.alpha = *merged.alpha;
  rc.concurrence = merged.concurrence;
  if (merged.omega) rc.omega = *merged.omega;
  if (merged.gamma_ratio) rc.gamma_ratio = *merged.gamma_ratio;
  if (merged.markovian_limit) rc.markovian_limit = *merged.markovian_limit;
  if (merged.time) rc.time = *merged.time;
  if (merged.tmin) rc.grid.min = *merged.tmin;
  if (merged.tmax) rc.grid.max = *merged.tmax;
  if (merged.points) rc.grid.points = *merged.points;
  if (merged.sweep) rc.sweep = parse_sweep(*merged.sweep);
  if (merged.format) rc.format = parse_format(*merged.format);
  if (merged.out) rc.out = *merged.out;
  if (merged.n_max) rc.n_max = *merged.n_max;
  rc.validate();
  return rc;
}

}  // namespace qspeed::cli
