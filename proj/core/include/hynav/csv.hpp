#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hynav {

/// Plain numeric table with a header row. CSV encoding: UTF-8, '.' decimal,
/// %.17g round-trip formatting, fixed column order.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

struct DeviationReport {
  std::vector<std::pair<std::string, double>> per_column_max;
  double overall{0.0};
  std::string table() const;
};

/// Per-column max absolute deviation between two tables. Throws
/// SchemaMismatch when headers or row counts differ.
DeviationReport compare_runs(const CsvTable& a, const CsvTable& b);

}  // namespace hynav
