#pragma once

// Point CSV: one point per row, comma-separated decimal coordinates, with an
// optional non-numeric header row.

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "atsp/geometry.hpp"

namespace atsp {

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) return false;
    out.push_back(v);
  }
  return !out.empty();
}

}  // namespace detail

inline PointSet read_points_csv(std::istream& in) {
  PointSet out;
  std::string line;
  std::vector<double> row;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    if (!detail::parse_row(line, row)) {
      if (!seen_data && line_no == 1) continue;  // header
      throw invalid_input("malformed point CSV at line " + std::to_string(line_no));
    }
    if (!out.empty() && row.size() != out.dim())
      throw invalid_input("inconsistent dimension at line " + std::to_string(line_no));
    out.push_back(Point(row));
    seen_data = true;
  }
  if (out.empty()) throw invalid_input("point CSV contains no points");
  return out;
}

inline PointSet read_points_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw invalid_input("cannot open " + path);
  return read_points_csv(f);
}

inline void write_points_csv(std::ostream& out, const PointSet& s) {
  out << std::setprecision(17);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t k = 0; k < s.dim(); ++k) out << (k ? "," : "") << s[i][k];
    out << '\n';
  }
}

}  // namespace atsp
