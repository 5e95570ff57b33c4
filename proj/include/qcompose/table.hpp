#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace qcompose {

using Cell = std::variant<std::string, std::int64_t, double>;

/// Column-ordered result table rendered as CSV or JSON. Reals are written
/// with 12 significant digits in both forms.
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

  std::string to_csv() const;
  /// Array of objects, keys in column order.
  std::string to_json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_real(double x);

}  // namespace qcompose
