#pragma once

#include <string>
#include <variant>
#include <vector>

namespace marc {

using Cell = std::variant<double, std::string>;

// Column-named numeric/text records with deterministic row order. CSV uses a
// header row, '\n' line endings and 17-significant-digit floats so that
// emitted files round-trip parse -> emit byte-identically.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::string to_csv() const;
  std::string to_json() const;
  static ResultTable from_csv(const std::string& text);
};

std::string format_double(double v);  // %.17g, locale-independent

}  // namespace marc
