#include "mforge/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace mforge {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix_csv(const Tensor& m, const std::string& path) {
  if (m.rank() != 2) throw ShapeMismatch("write_matrix_csv: expected a matrix");
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("write_matrix_csv: cannot open " + path);
  const std::size_t rows = m.dim(0), cols = m.dim(1);
  std::string line;
  for (std::size_t i = 0; i < rows; ++i) {
    line.clear();
    for (std::size_t j = 0; j < cols; ++j) {
      if (j) line += ',';
      line += format_double(m(i, j));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw IoError("write_matrix_csv: write failed for " + path);
}

Tensor read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("read_matrix_csv: cannot open " + path);

  std::vector<double> data;
  std::size_t cols = 0, rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t row_cols = 0;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      const std::string token =
          line.substr(pos, (comma == std::string::npos ? line.size() : comma) - pos);
      char* end = nullptr;
      const double v = std::strtod(token.c_str(), &end);
      if (end == token.c_str() || *end != '\0') {
        throw ParseError("read_matrix_csv: bad number '" + token + "' in " + path);
      }
      data.push_back(v);
      ++row_cols;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (rows == 0) {
      cols = row_cols;
    } else if (row_cols != cols) {
      throw ParseError("read_matrix_csv: ragged rows in " + path);
    }
    ++rows;
  }
  if (rows == 0) throw ParseError("read_matrix_csv: empty file " + path);
  return Tensor::from_data({rows, cols}, std::move(data));
}

}  // namespace mforge
