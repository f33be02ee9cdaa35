#include "vmfv/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vmfv {

int CsvTable::column_index(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

std::string format_double(double x) {
  // Shortest representation that round-trips exactly (up to the full 17
  // significant digits).
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string to_csv_string(const CsvTable& table) {
  std::ostringstream os;
  for (const std::string& line : table.metadata) os << "# " << line << "\n";
  for (size_t i = 0; i < table.columns.size(); ++i) {
    if (i) os << ',';
    os << table.columns[i];
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_double(row[i]);
    }
    os << "\n";
  }
  return os.str();
}

void write_csv(const CsvTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << to_csv_string(table);
  if (!out) throw std::runtime_error("write failed: " + path);
}

CsvTable parse_csv_string(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.metadata.push_back(line.size() > 1 && line[1] == ' '
                                   ? line.substr(2)
                                   : line.substr(1));
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!header_seen) {
      table.columns = cells;
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& c : cells) {
      size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(c, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != c.size()) {
        std::ostringstream os;
        os << "csv: bad numeric value '" << c << "' on line " << line_no;
        throw std::runtime_error(os.str());
      }
      row.push_back(v);
    }
    if (row.size() != table.columns.size()) {
      std::ostringstream os;
      os << "csv: row on line " << line_no << " has " << row.size()
         << " cells, expected " << table.columns.size();
      throw std::runtime_error(os.str());
    }
    table.rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::runtime_error("csv: missing header row");
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_csv_string(os.str());
}

}  // namespace vmfv
