#include "hynav/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hynav/errors.hpp"

namespace hynav {

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c ? "," : "") << table.columns[c];
  }
  os << "\n";
  char buf[32];
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw Error("CSV row width does not match header");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[c]);
      os << (c ? "," : "") << buf;
    }
    os << "\n";
  }
}

CsvTable read_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open '" + path + "' for reading");
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw SchemaMismatch("empty CSV '" + path + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::istringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.columns.push_back(cell);
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream rs(line);
    std::vector<double> row;
    while (std::getline(rs, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw SchemaMismatch("non-numeric CSV cell '" + cell + "' in " + path);
      }
    }
    if (row.size() != t.columns.size()) {
      throw SchemaMismatch("CSV row width mismatch in " + path);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

DeviationReport compare_runs(const CsvTable& a, const CsvTable& b) {
  if (a.columns != b.columns) {
    throw SchemaMismatch("CSV headers differ");
  }
  if (a.rows.size() != b.rows.size()) {
    throw SchemaMismatch("CSV row counts differ: " + std::to_string(a.rows.size()) +
                         " vs " + std::to_string(b.rows.size()));
  }
  DeviationReport rep;
  rep.per_column_max.reserve(a.columns.size());
  for (std::size_t c = 0; c < a.columns.size(); ++c) {
    double m = 0.0;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
      m = std::max(m, std::abs(a.rows[r][c] - b.rows[r][c]));
    }
    rep.per_column_max.emplace_back(a.columns[c], m);
    rep.overall = std::max(rep.overall, m);
  }
  return rep;
}

std::string DeviationReport::table() const {
  std::ostringstream os;
  char line[128];
  for (const auto& [name, dev] : per_column_max) {
    std::snprintf(line, sizeof(line), "%-16s %.6e\n", name.c_str(), dev);
    os << line;
  }
  std::snprintf(line, sizeof(line), "%-16s %.6e\n", "max", overall);
  os << line;
  return os.str();
}

}  // namespace hynav
