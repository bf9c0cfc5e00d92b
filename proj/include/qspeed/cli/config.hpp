#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qspeed::cli {

enum class OutputFormat { csv, json };

OutputFormat parse_format(std::string_view key);
std::string_view to_string(OutputFormat f);

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int points = 0;

  /// Throws InvalidArgument unless points >= 2 and min < max.
  void validate(std::string_view what) const;
  /// Evenly spaced, both ends included.
  std::vector<double> values() const;
};

inline const std::vector<std::string> sweep_parameters{"t", "alpha", "C", "Omega",
                                                       "Gamma_over_gamma0"};

struct SweepSpec {
  std::string parameter;
  GridSpec grid;

  bool longitudinal() const { return parameter == "t"; }
};

/// "<param>:<min>:<max>:<points>"
SweepSpec parse_sweep(std::string_view text);

inline const std::vector<std::string> model_keys{"closed-1q",       "closed-2q-aligned",
                                                 "closed-2q-anti",  "open-1q",
                                                 "open-2q-aligned", "open-2q-anti"};

bool is_open_model(std::string_view model);

/// Every setting that can come from a config file or a flag; unset fields
/// fall through to the next layer.
struct ConfigValues {
  std::optional<std::string> model;
  std::optional<std::string> metric;
  std::optional<double> alpha;
  std::optional<double> concurrence;
  std::optional<double> omega;
  std::optional<double> gamma_ratio;
  std::optional<bool> markovian_limit;
  std::optional<double> time;
  std::optional<double> tmin;
  std::optional<double> tmax;
  std::optional<int> points;
  std::optional<std::string> sweep;
  std::optional<std::string> format;
  std::optional<std::string> out;
  std::optional<int> n_max;
};

/// Keys match the long flag names; '-' and '_' are interchangeable and
/// "Gamma_over_gamma0" is accepted for gamma-ratio. Unknown keys are rejected.
ConfigValues config_from_json(const nlohmann::json& doc);
ConfigValues load_config_file(const std::string& path);

struct RunConfig {
  std::string model = "open-1q";
  std::string metric = "sld";
  double alpha = 1.0;
  std::optional<double> concurrence;  // when set, alpha is derived from it
  double omega = 1.0;
  double gamma_ratio = 0.1;
  bool markovian_limit = false;
  double time = 1.0;  // fixed time for transverse sweeps
  GridSpec grid{1e-4, 10.0, 101};
  std::optional<SweepSpec> sweep;
  OutputFormat format = OutputFormat::csv;
  std::string out;
  int n_max = 2;

  /// alpha, or the alpha of concurrence C on the branch alpha <= 1/sqrt 2.
  double effective_alpha() const;
  void validate() const;
};

/// Defaults, then file values, then flag values.
RunConfig resolve_config(const ConfigValues& file, const ConfigValues& flags);

}  // namespace qspeed::cli
