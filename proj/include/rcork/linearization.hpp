#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include <Eigen/SparseLU>

#include "rcork/block_vector.hpp"
#include "rcork/rep_model.hpp"

namespace rcork {

/// Linear pencil A - lambda B of size n*d + s whose eigenvalues coincide with
/// those of the rational matrix R. For z = [x_0; ...; x_{d-1}; y]:
///
///   A z = [sum_i P_{d-1-i} x_i + E y;  -x_0; ...; -x_{d-2};  F^T x_{d-1} + C y]
///   B z = [-P_d x_0;  -x_1; ...; -x_{d-1};  D y]
///
/// Eigenvectors have the form x_i = lambda^{d-1-i} x, y = -(C - lambda D)^{-1} F^T x.
class LinearizationPencil {
 public:
  explicit LinearizationPencil(ProblemPtr rep);

  const RationalEigenproblem& problem() const { return *rep_; }
  const ProblemPtr& problem_ptr() const { return rep_; }

  Index n() const { return rep_->n(); }
  Index d() const { return rep_->degree(); }
  Index s() const { return rep_->s(); }
  Index size() const { return n() * d() + s(); }

  BlockVector apply_A(const BlockVector& z) const;
  BlockVector apply_B(const BlockVector& z) const;

  /// Frobenius norms of A and B, from the coefficient norms.
  double norm_A_fro() const;
  double norm_B_fro() const;

  /// Dense assembly; throws SizeCapError above dense_cap().
  CMatrix assemble_A() const;
  CMatrix assemble_B() const;

 private:
  void check(const BlockVector& z) const;

  ProblemPtr rep_;
};

/// Factorizations needed to solve with A - mu B for one fixed shift mu:
/// the sparse LU of R(mu) and the LU of (C - mu D).
class ShiftedSolveContext {
 public:
  /// Optional user routine returning R(mu) assembled as a sparse matrix.
  using Assembler = std::function<SpMat(Complex)>;

  /// Throws PoleError if mu is (numerically) a pole, SingularShiftError if
  /// R(mu) is singular or numerically so.
  ShiftedSolveContext(ProblemPtr rep, Complex mu, const Assembler& assembler = {});

  Complex shift() const { return mu_; }
  const RationalEigenproblem& problem() const { return *rep_; }
  const ResolventFactor& resolvent() const { return resolvent_; }
  double rcond_estimate() const { return rcond_; }

  CVector solve_R(const CVector& rhs) const;

 private:
  ProblemPtr rep_;
  Complex mu_;
  ResolventFactor resolvent_;
  std::shared_ptr<Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>> lu_;
  double rcond_ = 0.0;
};

using ShiftContextPtr = std::shared_ptr<const ShiftedSolveContext>;

/// Reuses factorizations across repeated shifts. Keys are exact complex values.
class ShiftContextCache {
 public:
  explicit ShiftContextCache(ProblemPtr rep, ShiftedSolveContext::Assembler assembler = {})
      : rep_(std::move(rep)), assembler_(std::move(assembler)) {}

  ShiftContextPtr get(Complex mu);

  long factorizations() const { return factorizations_; }
  long hits() const { return hits_; }
  void clear();

 private:
  struct Less {
    bool operator()(const Complex& a, const Complex& b) const {
      return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    }
  };

  ProblemPtr rep_;
  ShiftedSolveContext::Assembler assembler_;
  std::map<Complex, ShiftContextPtr, Less> cache_;
  long factorizations_ = 0;
  long hits_ = 0;
  std::mutex mutex_;
};

struct OpCount {
  long mul = 0;
  long sub = 0;
  long neg = 0;
};

/// Block bidiagonal solve: X = [X_1, ..., X_{d-1}] (n x (d-1)) from
///   -X_1 = b_{d-1},   mu X_{k-1} - X_k = b_{d-k}   (k = 2..d-1),
/// for b = [b_1, ..., b_{d-1}]. Each step after the first costs one scalar-vector
/// multiplication and one vector subtraction; the counts are added to ops.
CMatrix solve_M1N1(const CMatrix& b, Complex mu, OpCount* ops = nullptr);

/// x = (A - mu B)^{-1} B w.
BlockVector solve_shifted(const ShiftedSolveContext& ctx, const BlockVector& w);

/// Only the last polynomial block x_{d-1} and the tail of (A - mu B)^{-1} B w.
/// Shares its code path with solve_shifted.
struct PartialSolve {
  CVector last;
  CVector tail;
};
PartialSolve solve_shifted_partial(const ShiftedSolveContext& ctx, const BlockVector& w);

}  // namespace rcork
