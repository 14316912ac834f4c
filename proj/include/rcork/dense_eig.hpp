#pragma once

#include <vector>

#include "rcork/types.hpp"

namespace rcork {

/// Generalized eigenvalues alpha/beta of A - lambda B, with optional right
/// eigenvectors (columns, LAPACK normalization).
struct GeneralizedEigs {
  CVector alpha;
  CVector beta;
  CMatrix vectors;
};

GeneralizedEigs generalized_eig(const CMatrix& A, const CMatrix& B, bool want_vectors = true);

/// Complex generalized Schur form A = Q S Z^*, B = Q T Z^* with S, T upper triangular.
struct GeneralizedSchur {
  CMatrix S;
  CMatrix T;
  CMatrix Q;
  CMatrix Z;
  CVector alpha;
  CVector beta;
};

GeneralizedSchur generalized_schur(const CMatrix& A, const CMatrix& B);

/// Moves the selected eigenvalues to the leading positions, updating Q and Z.
/// Throws NumericalError when the reordering fails.
void reorder_schur(GeneralizedSchur& schur, const std::vector<bool>& select);

}  // namespace rcork
