#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace osa::cli {

/// Comma-separated table with a header row. Cells never contain commas,
/// quotes or newlines; lines end with LF.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

/// Shortest form that still carries 17 significant digits.
std::string format_double(double value);

std::string to_csv(const CsvTable& table);
void write_csv(std::ostream& out, const CsvTable& table);

/// Inverse of to_csv. Throws std::runtime_error on ragged rows.
CsvTable parse_csv(std::string_view text);

}  // namespace osa::cli
