#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/SparseLU>

#include "rcork/block_vector.hpp"
#include "rcork/types.hpp"

namespace rcork {

/// Rational matrix in state-space form
///
///   R(lambda) = P(lambda) - E (C - lambda D)^{-1} F^T,
///   P(lambda) = sum_{i=0}^{d} lambda^i P_i,
///
/// with sparse n x n coefficients P_i, n x s factors E, F and s x s C, D.
/// s = 0 is allowed and reduces the problem to a polynomial one.
///
/// Immutable after construction. The Frobenius norms of P_i, E^*E and
/// F^T conj(F) are computed eagerly so the object can be shared freely
/// between threads.
class RationalEigenproblem {
 public:
  struct Options {
    /// A factorization of (C - mu D) whose reciprocal condition estimate
    /// falls at or below this value is treated as a pole.
    double pole_rcond = std::numeric_limits<double>::epsilon();
  };

  RationalEigenproblem(std::vector<SpMat> coeffs, SpMat E, SpMat F, SpMat C, SpMat D)
      : RationalEigenproblem(std::move(coeffs), std::move(E), std::move(F), std::move(C), std::move(D),
                             Options{}) {}
  RationalEigenproblem(std::vector<SpMat> coeffs, SpMat E, SpMat F, SpMat C, SpMat D, Options options);

  /// Polynomial problem (s = 0).
  static RationalEigenproblem polynomial(std::vector<SpMat> coeffs);

  Index n() const { return n_; }
  Index s() const { return s_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  const std::vector<SpMat>& coeffs() const { return coeffs_; }
  const SpMat& coeff(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  const SpMat& E() const { return E_; }
  const SpMat& F() const { return F_; }
  const SpMat& C() const { return C_; }
  const SpMat& D() const { return D_; }
  const Options& options() const { return options_; }

  double coeff_norm_fro(int i) const { return coeff_norms_.at(static_cast<std::size_t>(i)); }
  const CMatrix& EhE() const { return EhE_; }
  const CMatrix& FtFbar() const { return FtFbar_; }

 private:
  std::vector<SpMat> coeffs_;
  SpMat E_, F_, C_, D_;
  Options options_;
  Index n_ = 0;
  Index s_ = 0;
  std::vector<double> coeff_norms_;
  CMatrix EhE_;
  CMatrix FtFbar_;
};

using ProblemPtr = std::shared_ptr<const RationalEigenproblem>;

/// LU factorization of the s x s resolvent matrix (C - mu D).
/// Dense partial-pivoting LU for s <= dense_limit, sparse LU above.
class ResolventFactor {
 public:
  static constexpr Index dense_limit = 512;

  ResolventFactor() = default;
  /// Throws PoleError when the factorization fails or its reciprocal condition
  /// estimate is at or below the problem's pole threshold.
  ResolventFactor(const RationalEigenproblem& rep, Complex mu);

  Complex mu() const { return mu_; }
  Index size() const { return size_; }
  double rcond() const { return rcond_; }

  CMatrix solve(const CMatrix& rhs) const;
  CVector solve(const CVector& rhs) const;
  /// Explicit inverse; only sensible for small s.
  CMatrix inverse() const;

 private:
  Complex mu_{};
  Index size_ = 0;
  double rcond_ = 1.0;
  std::shared_ptr<Eigen::PartialPivLU<CMatrix>> dense_;
  std::shared_ptr<Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>> sparse_;
};

/// P(mu) by Horner's scheme.
SpMat evaluate_polynomial(const RationalEigenproblem& rep, Complex mu);

/// R(mu) = P(mu) - E (C - mu D)^{-1} F^T as a sparse matrix.
SpMat evaluate(const RationalEigenproblem& rep, Complex mu);

/// R(lambda) x without assembling R(lambda).
CVector apply_rational(const RationalEigenproblem& rep, Complex lambda, const CVector& x);

/// ||E (C - lambda D)^{-1} F^T||_F from the s x s identity
/// ||E G F^T||_F^2 = trace((E^*E) G (F^T conj(F)) G^*), G = (C - lambda D)^{-1}.
double proper_norm_fro(const RationalEigenproblem& rep, Complex lambda);

/// Relative residual
///   ||R(lambda) x||_2 / ((sum_i |lambda|^i ||P_i||_F + ||E (C - lambda D)^{-1} F^T||_F) ||x||_2).
double relative_residual(const RationalEigenproblem& rep, Complex lambda, const CVector& x);

/// Eigenvector of R from a linearization eigenvector z: block 0 if |lambda| > 1,
/// block d-1 otherwise, normalized to unit 2-norm.
CVector recover_eigenvector(const BlockVector& z, Complex lambda);

/// ||y + (C - lambda D)^{-1} F^T z_d|| / ||y|| for z = [..., z_d; y]. Measures how well
/// the tail of z matches the structure of an exact linearization eigenvector.
double tail_consistency(const RationalEigenproblem& rep, Complex lambda, const BlockVector& z);

struct LeadingCoefficientReport {
  double rcond_estimate = 0.0;
  bool ill_conditioned = false;
};

/// Factorizes P_d (throws SingularMatrixError on failure) and estimates its
/// conditioning. Ill-conditioning is reported, not fatal.
LeadingCoefficientReport check_leading_coefficient(const RationalEigenproblem& rep,
                                                   double warn_rcond = 1e-12);

/// Cheap lower-bound estimate of 1/cond_1 for a factorized sparse matrix:
/// one solve with a fixed pseudo-random right-hand side.
double sparse_rcond_estimate(const SpMat& A, const Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>& lu);

}  // namespace rcork
