#pragma once

#include <map>
#include <memory>
#include <vector>

#include "rcork/linearization.hpp"

namespace rcork {

/// A pencil A - lambda B accessed through products and shifted solves.
class PencilOperator {
 public:
  virtual ~PencilOperator() = default;
  virtual Index size() const = 0;
  virtual CVector apply_A(const CVector& v) const = 0;
  virtual CVector apply_B(const CVector& v) const = 0;
  /// (A - theta B)^{-1} B u.
  virtual CVector solve(Complex theta, const CVector& u) const = 0;
};

/// Explicit dense pencil with one LU per distinct shift.
class DensePencil : public PencilOperator {
 public:
  DensePencil(CMatrix A, CMatrix B);

  Index size() const override { return A_.rows(); }
  CVector apply_A(const CVector& v) const override { return A_ * v; }
  CVector apply_B(const CVector& v) const override { return B_ * v; }
  CVector solve(Complex theta, const CVector& u) const override;

 private:
  struct Less {
    bool operator()(const Complex& a, const Complex& b) const {
      return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    }
  };
  CMatrix A_, B_;
  mutable std::map<Complex, std::shared_ptr<Eigen::PartialPivLU<CMatrix>>, Less> lu_;
};

/// The linearization of a rational problem, solved with the structured
/// shifted solver on full-length vectors.
class StructuredPencil : public PencilOperator {
 public:
  explicit StructuredPencil(LinearizationPencil pencil)
      : pencil_(std::move(pencil)), cache_(std::make_shared<ShiftContextCache>(pencil_.problem_ptr())) {}

  Index size() const override { return pencil_.size(); }
  CVector apply_A(const CVector& v) const override;
  CVector apply_B(const CVector& v) const override;
  CVector solve(Complex theta, const CVector& u) const override;

 private:
  BlockVector wrap(const CVector& v) const;

  LinearizationPencil pencil_;
  std::shared_ptr<ShiftContextCache> cache_;
};

/// Rational Krylov decomposition A V H = B V K with V of size N x (j+1) and
/// H, K of size (j+1) x j.
struct KrylovState {
  CMatrix V;
  CMatrix H;
  CMatrix K;
  std::vector<Complex> shifts;

  Index steps() const { return H.cols(); }
};

/// Normalized starting vector; throws ZeroVectorError for a zero vector.
KrylovState rk_init(const CVector& v0);

/// One rational Krylov step with shift theta, continuing from the last basis
/// vector. Orthogonalization is classical Gram-Schmidt applied twice.
/// Throws BreakdownError when the new direction lies in the current space.
void rk_step(const PencilOperator& op, KrylovState& state, Complex theta);

KrylovState rk_run(const PencilOperator& op, const CVector& v0, const std::vector<Complex>& shifts);

struct RitzPair {
  Complex value;
  /// Eigenvector t of the square pencil K_j t = value H_j t, unit 2-norm.
  CVector t;
  /// |(last row of K) t - value (last row of H) t| / ||H t||.
  double cheap_residual = 0.0;
};

/// Ritz pairs of the (j+1) x j pencil (K, H). Infinite or undefined values
/// (|beta| at roundoff level) are dropped.
std::vector<RitzPair> ritz_pairs(const CMatrix& H, const CMatrix& K);

}  // namespace rcork
