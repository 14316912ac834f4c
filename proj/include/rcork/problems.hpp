#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rcork/rep_model.hpp"

namespace rcork {

struct GeneratedProblem {
  ProblemPtr problem;
  /// Exact eigenvalues planted in the diagonal core.
  std::vector<Complex> prescribed;
  /// Shifts suited to the prescribed eigenvalues.
  std::vector<Complex> shifts;
  std::string experiment;
  Index n = 0;
  std::uint64_t seed = 0;
};

/// Quadratic problem with one rational term:
///   R(lambda) = P (lambda^2 A2 + A0) P^T - (P e_n) (1 - lambda)^{-1} (P e_n)^T
/// with positive diagonal A2, A0 and the tridiagonal P (diagonal 1,
/// superdiagonal 1/2, subdiagonal 1/3), so M = P A2 P^T and K = P A0 P^T are
/// symmetric pentadiagonal. k_eigs target eigenvalues -i w_k, w_k in [10, 12),
/// are planted in rows away from the rank-one term; all other rows carry
/// eigenvalues +-i w with w in [0.5, 8]. Suggested shifts sit inside the
/// target cluster. Requires n >= 4 and k_eigs <= n - 1.
GeneratedProblem gen_exp1(Index n, std::uint64_t seed, Index k_eigs = 10);

/// Cubic problem with a rank-two rational term:
///   R(lambda) = P (A(lambda) - E0 (C - lambda D)^{-1} F0^T) Q,
/// A(lambda) diagonal cubic, C = diag(105, -105), D = I_2,
/// E0 = [e_1 + e_2, e_5 + e_6], F0 = [e_{n-3} + e_{n-2}, e_{n-1} + e_n].
/// P has diagonal 1, superdiagonals 1/2, 1/3 and subdiagonals -1/4, -1/5;
/// Q has diagonal -1, superdiagonal -1/3 and subdiagonal 1/2.
/// k_eigs eigenvalues with modulus in [0.1, 1] are planted (conjugate pairs,
/// plus one real root when k_eigs is odd); every other eigenvalue has modulus
/// at least 3. Requires n >= 8.
GeneratedProblem gen_exp2(Index n, std::uint64_t seed, Index k_eigs = 10);

}  // namespace rcork
