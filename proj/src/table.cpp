#include "qcompose/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "qcompose/error.hpp"

namespace qcompose {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);  // no "-0"
  return buf;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "row width does not match the header");
  }
  rows_.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += csv_escape(columns_[c]);
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      std::visit(
          [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
              out += csv_escape(v);
            } else if constexpr (std::is_same_v<T, double>) {
              out += format_real(v);
            } else {
              out += std::to_string(v);
            }
          },
          row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string Table::to_json() const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              if (std::isfinite(v)) {
                // Round through the CSV text so both renderings agree digit for digit.
                obj[columns_[c]] = std::strtod(format_real(v).c_str(), nullptr);
              } else {
                obj[columns_[c]] = format_real(v);
              }
            } else {
              obj[columns_[c]] = v;
            }
          },
          row[c]);
    }
    doc.push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

}  // namespace qcompose
