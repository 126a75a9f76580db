#include "marc/table.hpp"

#include <charconv>
#include <cstdlib>
#include <stdexcept>

#include "json.hpp"

namespace marc {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("ResultTable: row width does not match columns");
  rows.push_back(std::move(row));
}

namespace {

void append_cell(std::string& out, const Cell& cell) {
  if (std::holds_alternative<double>(cell)) {
    out += format_double(std::get<double>(cell));
  } else {
    const std::string& s = std::get<std::string>(cell);
    if (s.find_first_of(",\n\"") != std::string::npos)
      throw std::invalid_argument("ResultTable: cell text may not contain ',', '\"' or newline");
    out += s;
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

Cell parse_cell(const std::string& field) {
  if (field.empty()) return field;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() + field.size()) return v;
  return field;
}

}  // namespace

std::string ResultTable::to_csv() const {
  std::string out;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      append_cell(out, row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string ResultTable::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json rec;
    for (size_t i = 0; i < row.size(); ++i) {
      if (std::holds_alternative<double>(row[i]))
        rec[columns[i]] = std::get<double>(row[i]);
      else
        rec[columns[i]] = std::get<std::string>(row[i]);
    }
    arr.push_back(std::move(rec));
  }
  return arr.dump(2) + "\n";
}

ResultTable ResultTable::from_csv(const std::string& text) {
  ResultTable t;
  size_t start = 0;
  bool header = true;
  while (start < text.size()) {
    size_t pos = text.find('\n', start);
    if (pos == std::string::npos) pos = text.size();
    const std::string line = text.substr(start, pos - start);
    start = pos + 1;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (header) {
      t.columns = fields;
      header = false;
    } else {
      std::vector<Cell> row;
      row.reserve(fields.size());
      for (const auto& f : fields) row.push_back(parse_cell(f));
      t.add_row(std::move(row));
    }
  }
  return t;
}

}  // namespace marc
