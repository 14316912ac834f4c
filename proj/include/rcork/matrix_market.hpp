#pragma once

#include <string>

#include "rcork/types.hpp"

namespace rcork {

/// Reads a Matrix Market file: coordinate (real, complex, integer, pattern;
/// general, symmetric, skew-symmetric, hermitian) or array (real, complex,
/// integer; general). Throws ParseError with file and line on bad input.
SpMat read_matrix_market(const std::string& path);

/// Writes a complex general coordinate file with 17 significant digits.
void write_matrix_market(const std::string& path, const SpMat& m);

}  // namespace rcork
