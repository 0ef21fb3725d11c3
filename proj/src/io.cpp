#include "sturmet/io.hpp"

#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace sturmet {

void write_matrix_triplets(std::ostream& os, const Matrix& m, const std::string& name) {
  long nnz = 0;
  for (long j = 0; j < m.cols(); ++j)
    for (long i = 0; i < m.rows(); ++i)
      if (m(i, j) != Complex{0.0, 0.0}) ++nnz;

  os << name << ' ' << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  os << std::setprecision(17);
  for (long j = 0; j < m.cols(); ++j)
    for (long i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (z == Complex{0.0, 0.0}) continue;
      os << (i + 1) << ' ' << (j + 1) << ' ' << z.real() << ' ' << z.imag() << '\n';
    }
}

Matrix read_matrix_triplets(std::istream& is, const std::string& expect_name) {
  std::string line;
  // skip blank and comment lines
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream header(line);
  std::string name;
  long rows = 0, cols = 0, nnz = 0;
  if (!(header >> name >> rows >> cols >> nnz))
    throw IoError("read_matrix_triplets: malformed header: " + line);
  if (!expect_name.empty() && name != expect_name)
    throw IoError("read_matrix_triplets: expected block '" + expect_name + "', got '" + name + "'");
  if (rows <= 0 || cols <= 0 || nnz < 0)
    throw IoError("read_matrix_triplets: bad dimensions");

  Matrix m = Matrix::Zero(rows, cols);
  for (long k = 0; k < nnz; ++k) {
    long i = 0, j = 0;
    double re = 0.0, im = 0.0;
    if (!(is >> i >> j >> re >> im)) throw IoError("read_matrix_triplets: truncated entry list");
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw IoError("read_matrix_triplets: index out of range");
    m(i - 1, j - 1) = Complex{re, im};
  }
  is.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
  return m;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> read_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          field += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        row.push_back(field);
        field.clear();
      } else {
        field += c;
      }
    }
    row.push_back(field);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sturmet
