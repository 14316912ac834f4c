#include "rcork/rep_model.hpp"

#include <cmath>
#include <string>

#include "rcork/errors.hpp"

namespace rcork {

namespace {

void require_shape(const SpMat& m, Index rows, Index cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionError(std::string("matrix ") + name + " has shape " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
}

double one_norm(const SpMat& A) {
  double best = 0.0;
  for (Index k = 0; k < A.outerSize(); ++k) {
    double col = 0.0;
    for (SpMat::InnerIterator it(A, k); it; ++it) {
      col += std::abs(it.value());
    }
    best = std::max(best, col);
  }
  return best;
}

SpMat shifted(const SpMat& C, const SpMat& D, Complex mu) {
  SpMat M = C - mu * D;
  M.makeCompressed();
  return M;
}

}  // namespace

double sparse_rcond_estimate(const SpMat& A, const Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>& lu) {
  const Index n = A.rows();
  if (n == 0) {
    return 1.0;
  }
  CVector b(n);
  for (Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i + 1);
    b[i] = Complex(std::sin(1.3 * t) + 0.5, std::cos(0.7 * t));
  }
  const CVector x = lu.solve(b);
  const double xnorm = x.cwiseAbs().sum();
  if (!std::isfinite(xnorm)) {
    return 0.0;
  }
  const double anorm = one_norm(A);
  if (anorm == 0.0 || xnorm == 0.0) {
    return 0.0;
  }
  return b.cwiseAbs().sum() / (anorm * xnorm);
}

RationalEigenproblem::RationalEigenproblem(std::vector<SpMat> coeffs, SpMat E, SpMat F, SpMat C, SpMat D,
                                           Options options)
    : coeffs_(std::move(coeffs)),
      E_(std::move(E)),
      F_(std::move(F)),
      C_(std::move(C)),
      D_(std::move(D)),
      options_(options) {
  if (coeffs_.size() < 2) {
    throw DimensionError("RationalEigenproblem: degree must be at least 1 (need P_0 and P_1)");
  }
  n_ = coeffs_.front().rows();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    require_shape(coeffs_[i], n_, n_, ("P" + std::to_string(i)).c_str());
    coeffs_[i].makeCompressed();
  }
  s_ = C_.rows();
  require_shape(C_, s_, s_, "C");
  require_shape(D_, s_, s_, "D");
  require_shape(E_, n_, s_, "E");
  require_shape(F_, n_, s_, "F");
  E_.makeCompressed();
  F_.makeCompressed();
  C_.makeCompressed();
  D_.makeCompressed();

  if (s_ > 0) {
    // D must be nonsingular for the structured solver.
    if (s_ <= ResolventFactor::dense_limit) {
      const Eigen::PartialPivLU<CMatrix> lu{CMatrix(D_)};
      if (!(lu.rcond() > options_.pole_rcond)) {
        throw SingularMatrixError("matrix D is singular (rcond estimate " + std::to_string(lu.rcond()) + ")");
      }
    } else {
      Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
      lu.compute(D_);
      if (lu.info() != Eigen::Success || !(sparse_rcond_estimate(D_, lu) > options_.pole_rcond)) {
        throw SingularMatrixError("matrix D is singular");
      }
    }
  }

  coeff_norms_.reserve(coeffs_.size());
  for (const auto& P : coeffs_) {
    coeff_norms_.push_back(P.norm());
  }
  EhE_ = CMatrix(SpMat(E_.adjoint() * E_));
  FtFbar_ = CMatrix(SpMat(SpMat(F_.transpose()) * SpMat(F_.conjugate())));
}

RationalEigenproblem RationalEigenproblem::polynomial(std::vector<SpMat> coeffs) {
  const Index n = coeffs.empty() ? 0 : coeffs.front().rows();
  return RationalEigenproblem(std::move(coeffs), SpMat(n, 0), SpMat(n, 0), SpMat(0, 0), SpMat(0, 0));
}

ResolventFactor::ResolventFactor(const RationalEigenproblem& rep, Complex mu) : mu_(mu), size_(rep.s()) {
  if (size_ == 0) {
    return;
  }
  const SpMat M = shifted(rep.C(), rep.D(), mu);
  const double threshold = rep.options().pole_rcond;
  if (size_ <= dense_limit) {
    dense_ = std::make_shared<Eigen::PartialPivLU<CMatrix>>(CMatrix(M));
    rcond_ = dense_->rcond();
  } else {
    sparse_ = std::make_shared<Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>>();
    sparse_->compute(M);
    rcond_ = sparse_->info() == Eigen::Success ? sparse_rcond_estimate(M, *sparse_) : 0.0;
  }
  if (!(rcond_ > threshold)) {
    throw PoleError("(C - mu D) is singular at mu = (" + std::to_string(mu.real()) + ", " +
                    std::to_string(mu.imag()) + "): rcond estimate " + std::to_string(rcond_));
  }
}

CMatrix ResolventFactor::solve(const CMatrix& rhs) const {
  if (size_ == 0) {
    return CMatrix(0, rhs.cols());
  }
  if (dense_) {
    return dense_->solve(rhs);
  }
  return sparse_->solve(rhs);
}

CVector ResolventFactor::solve(const CVector& rhs) const {
  if (size_ == 0) {
    return CVector(0);
  }
  if (dense_) {
    return dense_->solve(rhs);
  }
  return sparse_->solve(rhs);
}

CMatrix ResolventFactor::inverse() const {
  return solve(CMatrix(CMatrix::Identity(size_, size_)));
}

SpMat evaluate_polynomial(const RationalEigenproblem& rep, Complex mu) {
  const int d = rep.degree();
  SpMat P = rep.coeff(d);
  for (int i = d - 1; i >= 0; --i) {
    P = mu * P + rep.coeff(i);
  }
  P.makeCompressed();
  return P;
}

SpMat evaluate(const RationalEigenproblem& rep, Complex mu) {
  SpMat R = evaluate_polynomial(rep, mu);
  if (rep.s() == 0) {
    return R;
  }
  const ResolventFactor factor(rep, mu);
  const SpMat G = factor.inverse().sparseView();
  const SpMat EG = rep.E() * G;
  const SpMat proper = EG * SpMat(rep.F().transpose());
  R -= proper;
  R.makeCompressed();
  return R;
}

namespace {

CVector apply_polynomial(const RationalEigenproblem& rep, Complex lambda, const CVector& x) {
  const int d = rep.degree();
  CVector y = rep.coeff(d) * x;
  for (int i = d - 1; i >= 0; --i) {
    y = lambda * y + rep.coeff(i) * x;
  }
  return y;
}

CVector apply_with(const RationalEigenproblem& rep, const ResolventFactor& factor, Complex lambda,
                   const CVector& x) {
  CVector y = apply_polynomial(rep, lambda, x);
  if (rep.s() > 0) {
    const CVector Ftx = rep.F().transpose() * x;
    y -= rep.E() * factor.solve(Ftx);
  }
  return y;
}

double proper_norm_with(const RationalEigenproblem& rep, const ResolventFactor& factor) {
  if (rep.s() == 0) {
    return 0.0;
  }
  const CMatrix G = factor.inverse();
  const Complex tr = (rep.EhE() * G * rep.FtFbar() * G.adjoint()).trace();
  return std::sqrt(std::max(0.0, tr.real()));
}

}  // namespace

CVector apply_rational(const RationalEigenproblem& rep, Complex lambda, const CVector& x) {
  if (x.size() != rep.n()) {
    throw DimensionError("apply_rational: vector length does not match n");
  }
  const ResolventFactor factor(rep, lambda);
  return apply_with(rep, factor, lambda, x);
}

double proper_norm_fro(const RationalEigenproblem& rep, Complex lambda) {
  if (rep.s() == 0) {
    return 0.0;
  }
  const ResolventFactor factor(rep, lambda);
  return proper_norm_with(rep, factor);
}

double relative_residual(const RationalEigenproblem& rep, Complex lambda, const CVector& x) {
  if (x.size() != rep.n()) {
    throw DimensionError("relative_residual: vector length does not match n");
  }
  const double xnorm = x.norm();
  if (xnorm == 0.0) {
    throw ZeroVectorError("relative_residual: x is the zero vector");
  }
  const ResolventFactor factor(rep, lambda);
  const double num = apply_with(rep, factor, lambda, x).norm();
  double scale = 0.0;
  double power = 1.0;
  const double absl = std::abs(lambda);
  for (int i = 0; i <= rep.degree(); ++i) {
    scale += power * rep.coeff_norm_fro(i);
    power *= absl;
  }
  scale += proper_norm_with(rep, factor);
  return num / (scale * xnorm);
}

CVector recover_eigenvector(const BlockVector& z, Complex lambda) {
  const Index pick = std::abs(lambda) > 1.0 ? 0 : z.d() - 1;
  CVector x = z.block(pick);
  const double xnorm = x.norm();
  const double floor = static_cast<double>(z.n()) * std::numeric_limits<double>::epsilon() * z.norm();
  if (!(xnorm > floor)) {
    throw ZeroVectorError("recover_eigenvector: selected block is numerically zero");
  }
  return x / xnorm;
}

double tail_consistency(const RationalEigenproblem& rep, Complex lambda, const BlockVector& z) {
  if (rep.s() == 0) {
    return 0.0;
  }
  const ResolventFactor factor(rep, lambda);
  const CVector zd = z.block(z.d() - 1);
  const CVector w = factor.solve(CVector(rep.F().transpose() * zd));
  const CVector y = z.tail();
  const double ynorm = y.norm();
  const double diff = (y + w).norm();
  if (ynorm == 0.0) {
    return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return diff / ynorm;
}

LeadingCoefficientReport check_leading_coefficient(const RationalEigenproblem& rep, double warn_rcond) {
  const SpMat& Pd = rep.coeff(rep.degree());
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(Pd);
  if (lu.info() != Eigen::Success) {
    throw SingularMatrixError("leading coefficient P_d is singular");
  }
  LeadingCoefficientReport report;
  report.rcond_estimate = sparse_rcond_estimate(Pd, lu);
  if (report.rcond_estimate == 0.0) {
    throw SingularMatrixError("leading coefficient P_d is singular");
  }
  report.ill_conditioned = report.rcond_estimate < warn_rcond;
  return report;
}

}  // namespace rcork
