#ifndef ELASTICA_IO_CSV_HPP
#define ELASTICA_IO_CSV_HPP

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "elastica/dynamics.hpp"

namespace elastica::io {

// Trajectory CSV: s, x, u_k..u_1, y, P_1..P_{k+2}, theta, kappa, H, C_1..C_k.
// Numbers are written with 17 significant digits so they parse back exactly.

inline std::vector<std::string> csv_header(int k) {
  std::vector<std::string> h{"s", "x"};
  for (int i = k; i >= 1; --i) h.push_back("u_" + std::to_string(i));
  h.push_back("y");
  for (int i = 1; i <= k + 2; ++i) h.push_back("P_" + std::to_string(i));
  h.insert(h.end(), {"theta", "kappa", "H"});
  for (int i = 1; i <= k; ++i) h.push_back("C_" + std::to_string(i));
  return h;
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::vector<double> sample_row(const ArcSample& a) {
  std::vector<double> row{a.s};
  const auto q = a.q.flat();
  row.insert(row.end(), q.begin(), q.end());
  row.insert(row.end(), a.P.values().begin(), a.P.values().end());
  row.insert(row.end(), {a.theta, a.kappa, a.H});
  row.insert(row.end(), a.casimir_values.begin(), a.casimir_values.end());
  return row;
}

inline void write_csv(std::ostream& os, const GeodesicArc& arc) {
  const auto h = csv_header(arc.dim().k());
  for (std::size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << h[i];
  os << '\n';
  for (const auto& a : arc.samples()) {
    const auto row = sample_row(a);
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Jet order implied by the column count 1 + 2(k+2) + 3 + k.
  [[nodiscard]] int k() const { return (static_cast<int>(header.size()) - 8) / 3; }
  [[nodiscard]] std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw std::out_of_range("csv: no column " + name);
  }
};

inline CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("csv: missing header");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      const auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || p != cell.data() + cell.size()) throw std::runtime_error("csv: bad number '" + cell + "'");
      row.push_back(v);
    }
    if (row.size() != t.header.size()) throw std::runtime_error("csv: ragged row");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace elastica::io

#endif  // ELASTICA_IO_CSV_HPP
