#include "rcork/linearization.hpp"

#include <cmath>
#include <string>

#include "rcork/errors.hpp"

namespace rcork {

LinearizationPencil::LinearizationPencil(ProblemPtr rep) : rep_(std::move(rep)) {
  if (!rep_) {
    throw DimensionError("LinearizationPencil: null problem");
  }
}

void LinearizationPencil::check(const BlockVector& z) const {
  if (!z.conformal(n(), d(), s())) {
    throw DimensionError("LinearizationPencil: block vector layout does not match (n, d, s)");
  }
}

BlockVector LinearizationPencil::apply_A(const BlockVector& z) const {
  check(z);
  const auto& rep = *rep_;
  const Index dd = d();
  BlockVector out(n(), dd, s());
  CVector first = rep.E() * z.tail();
  for (Index i = 0; i < dd; ++i) {
    first += rep.coeff(static_cast<int>(dd - 1 - i)) * z.block(i);
  }
  out.block(0) = first;
  for (Index i = 1; i < dd; ++i) {
    out.block(i) = -z.block(i - 1);
  }
  if (s() > 0) {
    out.tail() = rep.F().transpose() * z.block(dd - 1) + rep.C() * z.tail();
  }
  return out;
}

BlockVector LinearizationPencil::apply_B(const BlockVector& z) const {
  check(z);
  const auto& rep = *rep_;
  const Index dd = d();
  BlockVector out(n(), dd, s());
  out.block(0) = -(rep.coeff(static_cast<int>(dd)) * z.block(0));
  for (Index i = 1; i < dd; ++i) {
    out.block(i) = -z.block(i);
  }
  if (s() > 0) {
    out.tail() = rep.D() * z.tail();
  }
  return out;
}

double LinearizationPencil::norm_A_fro() const {
  const auto& rep = *rep_;
  double sq = static_cast<double>((d() - 1) * n());
  for (int i = 0; i < rep.degree(); ++i) {
    sq += rep.coeff_norm_fro(i) * rep.coeff_norm_fro(i);
  }
  sq += rep.E().squaredNorm() + rep.F().squaredNorm() + rep.C().squaredNorm();
  return std::sqrt(sq);
}

double LinearizationPencil::norm_B_fro() const {
  const auto& rep = *rep_;
  const double pd = rep.coeff_norm_fro(rep.degree());
  return std::sqrt(pd * pd + static_cast<double>((d() - 1) * n()) + rep.D().squaredNorm());
}

CMatrix LinearizationPencil::assemble_A() const {
  if (size() > dense_cap()) {
    throw SizeCapError("assemble_A: pencil size " + std::to_string(size()) + " exceeds dense cap " +
                       std::to_string(dense_cap()));
  }
  const auto& rep = *rep_;
  const Index nn = n();
  const Index dd = d();
  CMatrix A = CMatrix::Zero(size(), size());
  for (Index i = 0; i < dd; ++i) {
    A.block(0, i * nn, nn, nn) = CMatrix(rep.coeff(static_cast<int>(dd - 1 - i)));
  }
  for (Index i = 1; i < dd; ++i) {
    A.block(i * nn, (i - 1) * nn, nn, nn) = -CMatrix::Identity(nn, nn);
  }
  if (s() > 0) {
    A.block(0, nn * dd, nn, s()) = CMatrix(rep.E());
    A.block(nn * dd, (dd - 1) * nn, s(), nn) = CMatrix(rep.F()).transpose();
    A.block(nn * dd, nn * dd, s(), s()) = CMatrix(rep.C());
  }
  return A;
}

CMatrix LinearizationPencil::assemble_B() const {
  if (size() > dense_cap()) {
    throw SizeCapError("assemble_B: pencil size " + std::to_string(size()) + " exceeds dense cap " +
                       std::to_string(dense_cap()));
  }
  const auto& rep = *rep_;
  const Index nn = n();
  const Index dd = d();
  CMatrix B = CMatrix::Zero(size(), size());
  B.block(0, 0, nn, nn) = -CMatrix(rep.coeff(static_cast<int>(dd)));
  for (Index i = 1; i < dd; ++i) {
    B.block(i * nn, i * nn, nn, nn) = -CMatrix::Identity(nn, nn);
  }
  if (s() > 0) {
    B.block(nn * dd, nn * dd, s(), s()) = CMatrix(rep.D());
  }
  return B;
}

ShiftedSolveContext::ShiftedSolveContext(ProblemPtr rep, Complex mu, const Assembler& assembler)
    : rep_(std::move(rep)), mu_(mu), resolvent_(*rep_, mu) {
  const SpMat R = assembler ? assembler(mu) : evaluate(*rep_, mu);
  if (R.rows() != rep_->n() || R.cols() != rep_->n()) {
    throw DimensionError("ShiftedSolveContext: assembled R(mu) has the wrong shape");
  }
  lu_ = std::make_shared<Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>>();
  lu_->compute(R);
  if (lu_->info() != Eigen::Success) {
    throw SingularShiftError("R(mu) is singular at the shift (" + std::to_string(mu.real()) + ", " +
                             std::to_string(mu.imag()) + ")");
  }
  rcond_ = sparse_rcond_estimate(R, *lu_);
  if (!(rcond_ > std::numeric_limits<double>::epsilon())) {
    throw SingularShiftError("R(mu) is numerically singular at the shift (" + std::to_string(mu.real()) + ", " +
                             std::to_string(mu.imag()) + "): rcond estimate " + std::to_string(rcond_));
  }
}

CVector ShiftedSolveContext::solve_R(const CVector& rhs) const {
  return lu_->solve(rhs);
}

ShiftContextPtr ShiftContextCache::get(Complex mu) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(mu);
  if (it != cache_.end()) {
    ++hits_;
    return it->second;
  }
  auto ctx = std::make_shared<const ShiftedSolveContext>(rep_, mu, assembler_);
  ++factorizations_;
  cache_.emplace(mu, ctx);
  return ctx;
}

void ShiftContextCache::clear() {
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.clear();
}

CMatrix solve_M1N1(const CMatrix& b, Complex mu, OpCount* ops) {
  const Index m = b.cols();
  CMatrix X(b.rows(), m);
  if (m == 0) {
    return X;
  }
  X.col(0) = -b.col(m - 1);
  if (ops != nullptr) {
    ops->neg += 1;
  }
  for (Index k = 1; k < m; ++k) {
    X.col(k) = mu * X.col(k - 1) - b.col(m - 1 - k);
    if (ops != nullptr) {
      ops->mul += 1;
      ops->sub += 1;
    }
  }
  return X;
}

namespace {

// Solves for the last polynomial block and the tail. Block k of the solution
// equals mu^{d-1-k} u + X_{d-1-k}, where X solves the bidiagonal system with
// right-hand side -w_1, ..., -w_{d-1}.
PartialSolve solve_core(const ShiftedSolveContext& ctx, const BlockVector& w) {
  const auto& rep = ctx.problem();
  const Index d = rep.degree();
  const Complex mu = ctx.shift();
  if (!w.conformal(rep.n(), d, rep.s())) {
    throw DimensionError("solve_shifted: block vector layout does not match (n, d, s)");
  }

  CVector Dw = rep.s() > 0 ? CVector(rep.D() * w.tail()) : CVector(0);
  CVector rhs = -(rep.coeff(static_cast<int>(d)) * w.block(0));
  if (rep.s() > 0) {
    rhs -= rep.E() * ctx.resolvent().solve(Dw);
  }
  if (d > 1) {
    const CMatrix b = -w.poly().rightCols(d - 1);
    const CMatrix X = solve_M1N1(b, mu);
    for (Index k = 1; k <= d - 2; ++k) {
      rhs -= rep.coeff(static_cast<int>(k)) * X.col(k - 1);
    }
    const CVector last = X.col(d - 2);
    rhs -= rep.coeff(static_cast<int>(d - 1)) * last + mu * (rep.coeff(static_cast<int>(d)) * last);
  }
  PartialSolve out;
  out.last = ctx.solve_R(rhs);
  if (rep.s() > 0) {
    out.tail = ctx.resolvent().solve(CVector(Dw - rep.F().transpose() * out.last));
  } else {
    out.tail = CVector(0);
  }
  return out;
}

}  // namespace

PartialSolve solve_shifted_partial(const ShiftedSolveContext& ctx, const BlockVector& w) {
  return solve_core(ctx, w);
}

BlockVector solve_shifted(const ShiftedSolveContext& ctx, const BlockVector& w) {
  PartialSolve core = solve_core(ctx, w);
  const auto& rep = ctx.problem();
  const Index d = rep.degree();
  const Complex mu = ctx.shift();
  BlockVector x(rep.n(), d, rep.s());
  x.block(d - 1) = core.last;
  for (Index i = d - 1; i >= 1; --i) {
    x.block(i - 1) = mu * x.block(i) + w.block(i);
  }
  x.tail() = core.tail;
  return x;
}

}  // namespace rcork
