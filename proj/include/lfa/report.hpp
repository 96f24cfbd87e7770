#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfa/linalg.hpp"

namespace lfa {

using Json = nlohmann::ordered_json;

/// Six significant digits, '.' as decimal separator.
inline std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

inline std::string format_number(int value) { return std::to_string(value); }

/// Header plus rows of already formatted cells. Cells that parse as numbers
/// become JSON numbers in `to_json`.
class CsvTable {
 public:
  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> cells) {
    require(cells.size() == header_.size(), "csv: row width does not match the header");
    rows_.push_back(std::move(cells));
  }

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string str() const {
    std::string out = join(header_);
    for (const auto& r : rows_) out += join(r);
    return out;
  }

  Json to_json() const {
    Json rows = Json::array();
    for (const auto& r : rows_) {
      Json row = Json::object();
      for (std::size_t i = 0; i < header_.size(); ++i) row[header_[i]] = cell(r[i]);
      rows.push_back(std::move(row));
    }
    return rows;
  }

 private:
  static std::string join(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    return out + "\n";
  }

  static Json cell(const std::string& text) {
    if (text == "nan") return nullptr;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (!text.empty() && end == text.c_str() + text.size()) return v;
    return text;
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Result of one command: a table for CSV output and a summary that, with
/// the table rows attached, forms the JSON output.
struct Report {
  CsvTable table;
  Json summary = Json::object();

  std::string render(const std::string& format) const {
    if (format == "json") {
      Json out = summary;
      if (!table.header().empty()) out["rows"] = table.to_json();
      return out.dump(2) + "\n";
    }
    return table.str();
  }
};

inline Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace lfa
