#include "dataset.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hartman::cli {

void Dataset::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("dataset row width does not match the header");
  }
  rows.push_back(std::move(row));
}

std::string format_number(double v, int precision) {
  if (!std::isfinite(v)) {
    return "nan";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

double round_to_precision(double v, int precision) {
  if (!std::isfinite(v)) {
    return v;
  }
  const std::string s = format_number(v, precision);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

void write_csv(std::ostream& os, const Dataset& ds, int precision) {
  for (std::size_t i = 0; i < ds.columns.size(); ++i) {
    os << (i ? "," : "") << ds.columns[i];
  }
  os << '\n';
  for (const auto& row : ds.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) {
        os << ',';
      }
      const Cell& c = row[i];
      if (const auto* d = std::get_if<double>(&c)) {
        os << format_number(*d, precision);
      } else if (const auto* n = std::get_if<std::int64_t>(&c)) {
        os << *n;
      } else if (const auto* b = std::get_if<bool>(&c)) {
        os << (*b ? "true" : "false");
      } else {
        os << "nan";
      }
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Dataset& ds, int precision) {
  nlohmann::ordered_json doc;
  doc["metadata"] = ds.metadata;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : ds.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      auto& slot = obj[ds.columns[i]];
      if (const auto* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) {
          slot = round_to_precision(*d, precision);
        }
      } else if (const auto* n = std::get_if<std::int64_t>(&c)) {
        slot = *n;
      } else if (const auto* b = std::get_if<bool>(&c)) {
        slot = *b;
      }
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

}  // namespace hartman::cli
