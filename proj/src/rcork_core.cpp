#include "rcork/rcork_core.hpp"

#include <cmath>
#include <string>

#include <Eigen/QR>

#include "rcork/errors.hpp"

namespace rcork {

CMatrix CompactBasis::stacked() const {
  const Index r = rank();
  CMatrix out(d * r + s, columns());
  for (Index i = 0; i < d; ++i) {
    out.middleRows(i * r, r) = R[static_cast<std::size_t>(i)];
  }
  out.bottomRows(s) = V;
  return out;
}

BlockVector CompactBasis::combine(const CVector& c) const {
  BlockVector out(n, d, s);
  for (Index i = 0; i < d; ++i) {
    out.block(i) = Q * (R[static_cast<std::size_t>(i)] * c);
  }
  out.tail() = V * c;
  return out;
}

BlockVector CompactBasis::column(Index j) const {
  return combine(CVector::Unit(columns(), j));
}

CMatrix CompactBasis::reconstruct() const {
  if (n * d + s > dense_cap()) {
    throw SizeCapError("CompactBasis::reconstruct: size exceeds dense cap");
  }
  CMatrix U(n * d + s, columns());
  for (Index i = 0; i < d; ++i) {
    U.middleRows(i * n, n) = Q * R[static_cast<std::size_t>(i)];
  }
  U.bottomRows(s) = V;
  return U;
}

CompactState rcork_init(const BlockVector& u0) {
  const double nrm = u0.norm();
  if (!(nrm > 0.0)) {
    throw ZeroVectorError("rcork_init: starting vector is zero");
  }
  const Index n = u0.n();
  const Index d = u0.d();
  const Index s = u0.s();
  const CMatrix X = u0.poly() / nrm;

  CompactState state;
  CompactBasis& b = state.basis;
  b.n = n;
  b.d = d;
  b.s = s;
  Eigen::ColPivHouseholderQR<CMatrix> qr(X);
  const Index r = X.norm() > 0.0 ? qr.rank() : 0;
  b.Q = CMatrix(qr.householderQ()).leftCols(r);
  b.R.resize(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) {
    b.R[static_cast<std::size_t>(i)] = b.Q.adjoint() * X.col(i);
  }
  b.V = u0.tail() / nrm;
  state.H.resize(1, 0);
  state.K.resize(1, 0);

  // Normalize the stacked first column exactly.
  const double sn = b.stacked().norm();
  for (auto& Ri : b.R) {
    Ri /= sn;
  }
  b.V /= sn;
  return state;
}

namespace {

// Classical Gram-Schmidt applied twice; returns the coefficients and leaves
// the orthogonal remainder in x.
CVector cgs2(const CMatrix& basis, CVector& x) {
  CVector c = basis.adjoint() * x;
  x -= basis * c;
  const CVector c2 = basis.adjoint() * x;
  x -= basis * c2;
  c += c2;
  return c;
}

}  // namespace

BlockVector assemble_uj(const CompactState& state) {
  const CompactBasis& b = state.basis;
  const Index j = b.columns() - 1;
  CMatrix rc(b.rank(), b.d);
  for (Index i = 0; i < b.d; ++i) {
    rc.col(i) = b.R[static_cast<std::size_t>(i)].col(j);
  }
  BlockVector u(b.n, b.d, b.s);
  u.poly() = b.Q * rc;
  u.tail() = b.V.col(j);
  return u;
}

FirstLevel first_level(const CMatrix& Q, const CVector& u, double deflation_tol) {
  FirstLevel out;
  CVector q = u;
  out.x = cgs2(Q, q);
  const double alpha = q.norm();
  if (alpha > deflation_tol * u.norm()) {
    out.alpha = alpha;
    out.Q.resize(Q.rows(), Q.cols() + 1);
    out.Q.leftCols(Q.cols()) = Q;
    out.Q.col(Q.cols()) = q / alpha;
  } else {
    out.alpha = 0.0;
    out.Q = Q;
  }
  return out;
}

CVector compute_phat(const CVector& x, const CVector& v_hat, const CMatrix& r_col, Complex theta) {
  const Index r = x.size();
  const Index d = r_col.cols();
  if (r_col.rows() != r) {
    throw DimensionError("compute_phat: coefficient blocks do not match x");
  }
  CVector p(d * r + v_hat.size());
  p.segment((d - 1) * r, r) = x;
  for (Index i = d - 1; i >= 1; --i) {
    p.segment((i - 1) * r, r) = theta * p.segment(i * r, r) + r_col.col(i);
  }
  p.tail(v_hat.size()) = v_hat;
  return p;
}

SecondLevel second_level(const CMatrix& stacked, const CVector& p_hat) {
  SecondLevel out;
  out.p_tilde = p_hat;
  out.h = cgs2(stacked, out.p_tilde);
  return out;
}

void append_column(CompactState& state, CMatrix Q_next, const CVector& p_tilde, double alpha, Complex theta,
                   const CVector& h) {
  CompactBasis& b = state.basis;
  const Index d = b.d;
  const Index r = b.rank();
  const Index k = b.columns();
  const Index j = k - 1;
  const bool grow = alpha != 0.0;
  const Index rn = grow ? r + 1 : r;
  if (Q_next.cols() != rn || p_tilde.size() != d * r + b.s || h.size() != k) {
    throw DimensionError("append_column: inconsistent first/second level outputs");
  }

  CVector col(d * rn + b.s);
  Complex lead = alpha;
  for (Index i = d - 1; i >= 0; --i) {
    col.segment(i * rn, r) = p_tilde.segment(i * r, r);
    if (grow) {
      col(i * rn + r) = lead;
      lead *= theta;
    }
  }
  col.tail(b.s) = p_tilde.tail(b.s);
  const double beta = col.norm();
  if (!(beta > 1e-14 * std::sqrt(h.squaredNorm() + beta * beta))) {
    throw BreakdownError("rcork_step: rational Krylov breakdown at step " + std::to_string(k));
  }
  col /= beta;

  b.Q = std::move(Q_next);
  for (Index i = 0; i < d; ++i) {
    auto& Ri = b.R[static_cast<std::size_t>(i)];
    Ri.conservativeResize(rn, k + 1);
    if (grow) {
      Ri.row(r).setZero();
    }
    Ri.col(k) = col.segment(i * rn, rn);
  }
  b.V.conservativeResize(Eigen::NoChange, k + 1);
  b.V.col(k) = col.tail(b.s);

  state.H.conservativeResize(k + 1, k);
  state.K.conservativeResize(k + 1, k);
  state.H.row(k).setZero();
  state.K.row(k).setZero();
  state.H.col(j).head(k) = h;
  state.H(k, j) = beta;
  state.K.col(j) = theta * state.H.col(j);
  state.K(j, j) += 1.0;
  state.shifts.push_back(theta);
}

StepInfo rcork_step(ShiftContextCache& cache, CompactState& state, Complex theta) {
  const CompactBasis& b = state.basis;
  const Index j = b.columns() - 1;
  const BlockVector u = assemble_uj(state);
  const auto ctx = cache.get(theta);
  const PartialSolve xs = solve_shifted_partial(*ctx, u);

  FirstLevel fl = first_level(b.Q, xs.last);
  CMatrix rc(b.rank(), b.d);
  for (Index i = 0; i < b.d; ++i) {
    rc.col(i) = b.R[static_cast<std::size_t>(i)].col(j);
  }
  const CVector p_hat = compute_phat(fl.x, xs.tail, rc, theta);
  const SecondLevel sl = second_level(b.stacked(), p_hat);

  StepInfo info;
  info.alpha = fl.alpha;
  info.rank_grew = fl.alpha != 0.0;
  append_column(state, std::move(fl.Q), sl.p_tilde, fl.alpha, theta, sl.h);
  info.h_next = std::abs(state.H(j + 1, j));

  if (!(state.basis.rank() < state.basis.d + state.basis.columns())) {
    throw NumericalError("rcork_step: rank of Q exceeds d + j");
  }
  return info;
}

BlockVector ritz_vector(const CompactState& state, const RitzPair& pair) {
  const CVector c = state.H * pair.t;
  BlockVector z = state.basis.combine(c);
  const double zn = z.norm();
  if (zn > 0.0) {
    z.data() /= zn;
  }
  return z;
}

std::vector<RitzVector> ritz_vectors(const CompactState& state) {
  std::vector<RitzVector> out;
  for (auto& pair : ritz_pairs(state.H, state.K)) {
    BlockVector z = ritz_vector(state, pair);
    out.push_back({std::move(pair), std::move(z)});
  }
  return out;
}

double q_orthogonality(const CompactBasis& basis) {
  const Index r = basis.rank();
  return (basis.Q.adjoint() * basis.Q - CMatrix::Identity(r, r)).norm();
}

double r_orthogonality(const CompactBasis& basis) {
  const CMatrix S = basis.stacked();
  const Index k = S.cols();
  return (S.adjoint() * S - CMatrix::Identity(k, k)).norm();
}

double recurrence_residual(const LinearizationPencil& pencil, const CompactState& state) {
  const Index j = state.steps();
  if (j == 0) {
    return 0.0;
  }
  double sq = 0.0;
  for (Index c = 0; c < j; ++c) {
    const BlockVector uh = state.basis.combine(state.H.col(c));
    const BlockVector uk = state.basis.combine(state.K.col(c));
    const CVector diff = pencil.apply_A(uh).data() - pencil.apply_B(uk).data();
    sq += diff.squaredNorm();
  }
  const double scale = pencil.norm_A_fro() * state.H.norm() + pencil.norm_B_fro() * state.K.norm();
  return std::sqrt(sq) / scale;
}

MemoryCounts memory_counts(Index n, Index d, Index s, Index r, Index k) {
  MemoryCounts m;
  const long long hk = 2LL * k * (k - 1);
  m.compact = static_cast<long long>(n) * r + static_cast<long long>(d * r + s) * k + hk;
  m.classical = static_cast<long long>(n * d + s) * k + hk;
  return m;
}

}  // namespace rcork
