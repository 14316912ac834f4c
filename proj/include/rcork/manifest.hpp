#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rcork/problems.hpp"
#include "rcork/rep_model.hpp"

namespace rcork {

/// Plain key = value problem description, '#' starts a comment, string values
/// may be quoted. Paths are relative to the manifest's directory.
///
///   degree = 2
///   n = 100            # optional, checked
///   s = 1              # optional, checked
///   P0 = "P0.mtx"
///   P1 = "P1.mtx"
///   P2 = "P2.mtx"
///   E = "E.mtx"        # E, F, C, D all present or all absent
///   F = "F.mtx"
///   C = "C.mtx"
///   D = "D.mtx"
///   eigenvalues = "eigenvalues.txt"   # optional, "re im" per line
struct ProblemManifest {
  std::string path;
  int degree = 0;
  std::optional<Index> n;
  std::optional<Index> s;
  std::vector<std::string> coeff_files;
  std::optional<std::string> E, F, C, D;
  std::optional<std::string> eigenvalues;
};

/// Throws ParseError with file and line.
ProblemManifest parse_manifest(const std::string& path);

struct LoadedProblem {
  ProblemPtr problem;
  std::vector<Complex> prescribed;
};

/// Parses the manifest and loads every referenced matrix. Throws ParseError or
/// DimensionError naming the offending matrix.
LoadedProblem load_problem(const std::string& manifest_path);

/// Writes Matrix Market files and manifest.toml into dir; returns the manifest path.
std::string export_problem(const RationalEigenproblem& rep, const std::vector<Complex>& prescribed,
                           const std::string& dir);

std::vector<Complex> read_eigenvalues(const std::string& path);

}  // namespace rcork
