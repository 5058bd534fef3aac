#include "auger/csv_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "auger/error.hpp"

namespace auger {

void CsvTable::add_row(std::initializer_list<double> values) {
  rows.emplace_back(values);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error("invalid_csv", "no column named '" + name + "'");
}

void write_csv(const std::string& path, const CsvTable& table) {
  if (table.header.empty()) {
    throw Error("invalid_csv", "refusing to write a CSV without a header row");
  }
  std::ofstream out(path);
  if (!out) throw Error("io_error", "cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out << (i ? "," : "") << table.header[i];
  }
  out << "\n";
  char buf[64];
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw Error("invalid_csv", "row width does not match the header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.12g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << "\n";
  }
  if (!out) throw Error("io_error", "write to '" + path + "' failed");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot open '" + path + "' for reading");

  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw Error("invalid_csv", "'" + path + "' is empty; a header row is required");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  if (table.header.empty()) {
    throw Error("invalid_csv", "'" + path + "' has an empty header row");
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw Error("invalid_csv", path + ":" + std::to_string(line_no) +
                                       ": cell '" + cell + "' is not a number");
      }
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
        ++used;
      if (used != cell.size()) {
        throw Error("invalid_csv", path + ":" + std::to_string(line_no) + ": cell '" +
                                       cell + "' has trailing characters");
      }
      row.push_back(v);
    }
    if (row.size() != table.header.size()) {
      throw Error("invalid_csv", path + ":" + std::to_string(line_no) +
                                     ": expected " + std::to_string(table.header.size()) +
                                     " cells, got " + std::to_string(row.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace auger
