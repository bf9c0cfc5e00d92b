#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qspeed/cli/config.hpp"

namespace qspeed::cli {

using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

/// Rows plus a key/value header describing how they were produced.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, std::string value);
  void add_meta(std::string key, double value);
};

/// 12 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

/// "# key: value" header lines, a column line, then one line per row.
std::string render_csv(const Table& table);
/// {"meta": {...}, "columns": [...], "rows": [[...], ...]}; non-finite numbers become null.
std::string render_json(const Table& table);
std::string render(const Table& table, OutputFormat format);

}  // namespace qspeed::cli
