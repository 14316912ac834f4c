#include "rcork/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "rcork/errors.hpp"
#include "rcork/io_util.hpp"

namespace rcork {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

enum class Field { Real, Complex, Integer, Pattern };
enum class Symmetry { General, Symmetric, Skew, Hermitian };

}  // namespace

SpMat read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path, 0, "cannot open file");
  }
  std::string line;
  long lineno = 0;
  if (!std::getline(in, line)) {
    throw ParseError(path, 1, "empty file");
  }
  ++lineno;
  std::istringstream header(line);
  std::string banner, object, format, field_s, sym_s;
  header >> banner >> object >> format >> field_s >> sym_s;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix") {
    throw ParseError(path, lineno, "missing %%MatrixMarket matrix header");
  }
  format = lower(format);
  field_s = lower(field_s);
  sym_s = lower(sym_s);
  Field field;
  if (field_s == "real" || field_s == "double") {
    field = Field::Real;
  } else if (field_s == "complex") {
    field = Field::Complex;
  } else if (field_s == "integer") {
    field = Field::Integer;
  } else if (field_s == "pattern") {
    field = Field::Pattern;
  } else {
    throw ParseError(path, lineno, "unsupported field '" + field_s + "'");
  }
  Symmetry sym;
  if (sym_s == "general") {
    sym = Symmetry::General;
  } else if (sym_s == "symmetric") {
    sym = Symmetry::Symmetric;
  } else if (sym_s == "skew-symmetric") {
    sym = Symmetry::Skew;
  } else if (sym_s == "hermitian") {
    sym = Symmetry::Hermitian;
  } else {
    throw ParseError(path, lineno, "unsupported symmetry '" + sym_s + "'");
  }
  if (format != "coordinate" && format != "array") {
    throw ParseError(path, lineno, "unsupported format '" + format + "'");
  }
  if (format == "array" && (field == Field::Pattern || sym != Symmetry::General)) {
    throw ParseError(path, lineno, "array format supports general real, integer or complex data only");
  }

  auto next_data_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++lineno;
      const auto pos = out.find_first_not_of(" \t\r");
      if (pos == std::string::npos || out[pos] == '%') {
        continue;
      }
      return true;
    }
    return false;
  };

  if (!next_data_line(line)) {
    throw ParseError(path, lineno, "missing size line");
  }
  long long rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream sz(line);
    if (format == "coordinate") {
      if (!(sz >> rows >> cols >> nnz)) {
        throw ParseError(path, lineno, "malformed size line");
      }
    } else {
      if (!(sz >> rows >> cols)) {
        throw ParseError(path, lineno, "malformed size line");
      }
      nnz = rows * cols;
    }
  }
  if (rows < 0 || cols < 0 || nnz < 0) {
    throw ParseError(path, lineno, "negative dimensions");
  }

  auto read_value = [&](std::istringstream& ss) -> Complex {
    double re = 1.0;
    double im = 0.0;
    if (field == Field::Pattern) {
      return {1.0, 0.0};
    }
    if (!(ss >> re)) {
      throw ParseError(path, lineno, "malformed value");
    }
    if (field == Field::Complex && !(ss >> im)) {
      throw ParseError(path, lineno, "missing imaginary part");
    }
    return {re, im};
  };

  std::vector<Eigen::Triplet<Complex, Index>> t;
  t.reserve(static_cast<std::size_t>(nnz));
  for (long long k = 0; k < nnz; ++k) {
    if (!next_data_line(line)) {
      throw ParseError(path, lineno, "expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
    }
    std::istringstream ss(line);
    long long i = 0, j = 0;
    if (format == "coordinate") {
      if (!(ss >> i >> j)) {
        throw ParseError(path, lineno, "malformed entry");
      }
      if (i < 1 || i > rows || j < 1 || j > cols) {
        throw ParseError(path, lineno, "entry index out of range");
      }
      --i;
      --j;
    } else {
      i = k % std::max<long long>(rows, 1);
      j = k / std::max<long long>(rows, 1);
    }
    const Complex v = read_value(ss);
    t.emplace_back(i, j, v);
    if (i != j) {
      switch (sym) {
        case Symmetry::General:
          break;
        case Symmetry::Symmetric:
          t.emplace_back(j, i, v);
          break;
        case Symmetry::Skew:
          t.emplace_back(j, i, -v);
          break;
        case Symmetry::Hermitian:
          t.emplace_back(j, i, std::conj(v));
          break;
      }
    }
  }
  SpMat m(static_cast<Index>(rows), static_cast<Index>(cols));
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

void write_matrix_market(const std::string& path, const SpMat& m) {
  std::ostringstream out;
  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  char buf[128];
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (SpMat::InnerIterator it(m, k); it; ++it) {
      std::snprintf(buf, sizeof(buf), "%lld %lld %.17g %.17g\n", static_cast<long long>(it.row() + 1),
                    static_cast<long long>(it.col() + 1), it.value().real(), it.value().imag());
      out << buf;
    }
  }
  write_file_atomic(path, out.str());
}

}  // namespace rcork
