#include "osa/cli/csv.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace osa::cli {

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) throw std::invalid_argument("csv row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

void write_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) out += ',';
    out += cells[i];
  }
  out += '\n';
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

std::string to_csv(const CsvTable& table) {
  std::string out;
  write_line(out, table.header);
  for (const auto& row : table.rows) write_line(out, row);
  return out;
}

void write_csv(std::ostream& out, const CsvTable& table) { out << to_csv(table); }

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  bool first = true;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto cells = split(text.substr(start, end - start));
    if (first) {
      table.header = cells;
      first = false;
    } else if (cells.size() != table.header.size()) {
      throw std::runtime_error("ragged csv row");
    } else {
      table.rows.push_back(cells);
    }
    start = end + 1;
  }
  return table;
}

}  // namespace osa::cli
