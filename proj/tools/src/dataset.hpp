#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace hartman::cli {

/// Missing values (e.g. divergent sweep points) are monostate.
using Cell = std::variant<std::monostate, double, std::int64_t, bool>;

struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  void add_row(std::vector<Cell> row);
};

/// Shortest-form number with `precision` significant digits, C locale.
std::string format_number(double v, int precision);

/// The value a reader recovers from format_number(v, precision).
double round_to_precision(double v, int precision);

/// Header row and one line per row, LF endings. Missing values and
/// non-finite numbers are written as "nan".
void write_csv(std::ostream& os, const Dataset& ds, int precision);

/// {"metadata": {...}, "rows": [{column: value, ...}, ...]}; missing values
/// and non-finite numbers become null.
void write_json(std::ostream& os, const Dataset& ds, int precision);

}  // namespace hartman::cli
