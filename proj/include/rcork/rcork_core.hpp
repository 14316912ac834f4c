#pragma once

#include <vector>

#include "rcork/krylov_classic.hpp"
#include "rcork/linearization.hpp"

namespace rcork {

/// Compact representation of a basis U of the linearization space:
/// polynomial block i of U is Q R[i] and the tail is V. Q (n x r) and the
/// stacked matrix [R[0]; ...; R[d-1]; V] both have orthonormal columns, so U
/// does too.
struct CompactBasis {
  Index n = 0;
  Index d = 0;
  Index s = 0;
  CMatrix Q;
  std::vector<CMatrix> R;
  CMatrix V;

  Index rank() const { return Q.cols(); }
  Index columns() const { return V.cols(); }

  /// [R[0]; ...; R[d-1]; V], size (d r + s) x k.
  CMatrix stacked() const;
  /// Column j of U.
  BlockVector column(Index j) const;
  /// U applied to a coefficient vector: U c.
  BlockVector combine(const CVector& c) const;
  /// Dense U (n d + s) x k; for tests at small scale.
  CMatrix reconstruct() const;
};

/// Compact rational Krylov decomposition A U H = B U K.
struct CompactState {
  CompactBasis basis;
  CMatrix H;
  CMatrix K;
  std::vector<Complex> shifts;

  Index steps() const { return H.cols(); }
};

/// Builds the compact form of a normalized starting vector. Q spans the
/// polynomial blocks, with rank found by column-pivoted QR.
CompactState rcork_init(const BlockVector& u0);

/// The last basis column u_j, with polynomial blocks from one Q product.
BlockVector assemble_uj(const CompactState& state);

struct FirstLevel {
  CMatrix Q;
  /// Coefficients of u in the old Q.
  CVector x;
  /// Norm of the component outside span(Q); exactly 0 when it is at or below
  /// deflation_tol * ||u||, in which case Q is returned unchanged.
  double alpha = 0.0;
};
/// Extends an orthonormal Q by the new direction of u (Gram-Schmidt twice).
FirstLevel first_level(const CMatrix& Q, const CVector& u, double deflation_tol = 1e-12);

/// Coefficient vector [p_0; ...; p_{d-1}; v] in the old Q: p_{d-1} = x,
/// p_{i-1} = theta p_i + r_col.col(i). r_col holds the last columns of the
/// R blocks (r x d).
CVector compute_phat(const CVector& x, const CVector& v_hat, const CMatrix& r_col, Complex theta);

struct SecondLevel {
  CVector h;
  CVector p_tilde;
};
/// Gram-Schmidt twice against the orthonormal columns of the stacked R.
SecondLevel second_level(const CMatrix& stacked, const CVector& p_hat);

/// Appends the new basis column. For alpha != 0 the new column interleaves the
/// blocks of p_tilde with theta^{d-1-i} alpha and the R blocks grow by a zero
/// row. Q_next is the output of first_level. Extends H and K by one column
/// (K column = theta * H column + e_j). Throws BreakdownError.
void append_column(CompactState& state, CMatrix Q_next, const CVector& p_tilde, double alpha, Complex theta,
                   const CVector& h);

struct StepInfo {
  /// Norm of the component of the new direction outside span(Q).
  double alpha = 0.0;
  bool rank_grew = false;
  double h_next = 0.0;
};

/// One compact rational Krylov step with shift theta, continuing from the last
/// basis column. Throws BreakdownError on breakdown.
StepInfo rcork_step(ShiftContextCache& cache, CompactState& state, Complex theta);

/// Ritz pairs together with their linearization vectors z = U H t, unit norm.
struct RitzVector {
  RitzPair pair;
  BlockVector z;
};
std::vector<RitzVector> ritz_vectors(const CompactState& state);
/// Linearization vector for one Ritz pair.
BlockVector ritz_vector(const CompactState& state, const RitzPair& pair);

/// ||Q^* Q - I||_F and ||Rs^* Rs - I||_F for the stacked Rs.
double q_orthogonality(const CompactBasis& basis);
double r_orthogonality(const CompactBasis& basis);

/// ||A U H - B U K||_F / (||A||_F ||H||_F + ||B||_F ||K||_F).
double recurrence_residual(const LinearizationPencil& pencil, const CompactState& state);

/// Stored complex numbers for a basis with k columns (k-1 steps) and rank r,
/// including the two (k x (k-1)) Hessenberg matrices.
struct MemoryCounts {
  long long compact = 0;
  long long classical = 0;
};
MemoryCounts memory_counts(Index n, Index d, Index s, Index r, Index k);

}  // namespace rcork
