#pragma once

#include <string>
#include <vector>

namespace rdstab {

// Writes a numeric table: header row, then rows at 17 significant digits
// ("%.17g"), comma-separated, '\n' line ends. Throws LoadError on I/O failure.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// Formats one value the way write_csv does.
std::string format_csv_value(double value);

// Cells are kept as text so that mixed tables (e.g. sweep summaries with a
// status column) survive the round trip; csv_number converts on demand.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

// Parses a cell written by format_csv_value. Throws LoadError on junk.
double csv_number(const std::string& cell);

// Reads any table written by this tool. Throws LoadError on malformed input.
CsvTable read_csv(const std::string& path);

}  // namespace rdstab
