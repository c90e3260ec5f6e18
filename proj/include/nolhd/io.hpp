#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nolhd/matrix.hpp"

namespace nolhd {

// Design CSV: one row per line, comma separated, no header. Accepts integer
// and fractional values alike.
inline Matrix read_csv_matrix(std::istream& in, const std::string& name = "<stream>") {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        const double v = std::stod(cell, &pos);
        while (pos < cell.size() && (cell[pos] == ' ' || cell[pos] == '\t')) ++pos;
        if (pos != cell.size()) throw std::invalid_argument("trailing junk");
        row.push_back(v);
      } catch (const std::exception&) {
        throw std::runtime_error(name + ":" + std::to_string(lineno) + ": bad numeric cell '" +
                                 cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error(name + ":" + std::to_string(lineno) + ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(name + ": empty CSV");
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline Matrix read_csv_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_csv_matrix(in, path);
}

// 17 significant digits: values round-trip exactly through the reader.
inline void write_csv_matrix(std::ostream& out, const Matrix& m) {
  char buf[64];
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

inline void write_csv_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv_matrix(out, m);
}

}  // namespace nolhd
