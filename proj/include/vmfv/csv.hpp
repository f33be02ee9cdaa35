#pragma once

#include <string>
#include <vector>

namespace vmfv {

/// Numeric table with '#'-prefixed metadata lines and a header row.
/// Values are written with 17 significant digits so files round-trip
/// losslessly and identical runs diff clean.
struct CsvTable {
  std::vector<std::string> metadata;  // without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column_index(const std::string& name) const;  // -1 if absent
};

std::string format_double(double x);

void write_csv(const CsvTable& table, const std::string& path);
std::string to_csv_string(const CsvTable& table);
CsvTable read_csv(const std::string& path);
CsvTable parse_csv_string(const std::string& text);

}  // namespace vmfv
