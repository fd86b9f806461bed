#include <cstdio>
#include <sstream>

#include "cpb/cli_io.hpp"

namespace cpb {

int ResultTable::column_index(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return (int)i;
  throw ColumnMissing("table has no column '" + name + "'");
}

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw ShapeMismatch("row width does not match column count");
  rows.push_back(std::move(row));
}

std::string to_csv(const ResultTable& table) {
  if (table.columns.size() != table.units.size())
    throw ShapeMismatch("units row does not match column count");
  std::ostringstream out;
  out << "# " << table.provenance << "\n";
  out << "# units:";
  for (size_t i = 0; i < table.units.size(); ++i)
    out << (i ? "," : " ") << table.units[i];
  out << "\n";
  for (size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << "\n";
  char buf[40];
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << "\n";
  }
  out << "# rows: " << table.rows.size() << "\n";
  return out.str();
}

}  // namespace cpb
