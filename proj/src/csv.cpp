#include "rdstab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rdstab/errors.hpp"

namespace rdstab {

std::string format_csv_value(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("cannot open '" + path + "' for writing");
  for (size_t c = 0; c < header.size(); ++c) {
    if (c > 0) out << ',';
    out << header[c];
  }
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw LoadError("CSV row width does not match header");
    }
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ',';
      out << format_csv_value(row[c]);
    }
    out << '\n';
  }
  if (!out) throw LoadError("write failed for '" + path + "'");
}

int CsvTable::column(const std::string& name) const {
  for (size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) return static_cast<int>(c);
  }
  return -1;
}

double csv_number(const std::string& cell) {
  try {
    size_t pos = 0;
    const double x = std::stod(cell, &pos);
    if (pos != cell.size()) throw std::invalid_argument(cell);
    return x;
  } catch (const std::exception&) {
    throw LoadError("malformed CSV number '" + cell + "'");
  }
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw LoadError("empty CSV: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::istringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) table.header.push_back(cell);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> row;
    row.reserve(table.header.size());
    std::istringstream rs(line);
    while (std::getline(rs, cell, ',')) row.push_back(cell);
    // A trailing empty cell is eaten by getline; restore it.
    if (!line.empty() && line.back() == ',') row.push_back("");
    if (row.size() != table.header.size()) {
      throw LoadError("CSV row width mismatch in " + path);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace rdstab
