#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace auger {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add_row(std::initializer_list<double> values);
  // Column index by header name; throws when absent.
  std::size_t column(const std::string& name) const;
};

// Comma-separated, header row mandatory, numbers at 12 significant digits.
void write_csv(const std::string& path, const CsvTable& table);

// Strict reader: every row must match the header width and parse as numbers.
CsvTable read_csv(const std::string& path);

}  // namespace auger
