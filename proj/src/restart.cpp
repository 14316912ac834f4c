#include "rcork/restart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "rcork/dense_eig.hpp"
#include "rcork/errors.hpp"

namespace rcork {

double SelectionRule::rank(Complex value) const {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    return std::numeric_limits<double>::infinity();
  }
  switch (kind) {
    case Selection::ClosestToTarget:
      return std::abs(value - target);
    case Selection::LargestNegativeImag:
      return value.imag();
    case Selection::Custom:
      if (!score) {
        throw ConfigError("custom selection requires a scoring function");
      }
      return score(value);
  }
  return 0.0;
}

std::vector<Index> order_by_rule(const std::vector<Complex>& values, const SelectionRule& rule,
                                 const std::vector<Index>& forced) {
  const Index m = static_cast<Index>(values.size());
  std::vector<double> keys(values.size());
  for (Index i = 0; i < m; ++i) {
    keys[static_cast<std::size_t>(i)] = rule.rank(values[static_cast<std::size_t>(i)]);
  }
  std::vector<bool> taken(values.size(), false);
  std::vector<Index> out;
  for (const Index f : forced) {
    if (f >= 0 && f < m && !taken[static_cast<std::size_t>(f)]) {
      taken[static_cast<std::size_t>(f)] = true;
      out.push_back(f);
    }
  }
  std::vector<Index> rest;
  for (Index i = 0; i < m; ++i) {
    if (!taken[static_cast<std::size_t>(i)]) {
      rest.push_back(i);
    }
  }
  std::stable_sort(rest.begin(), rest.end(), [&](Index a, Index b) {
    return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)];
  });
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

RestartReport restart(CompactState& state, const std::vector<bool>& select) {
  const Index j = state.steps();
  if (static_cast<Index>(select.size()) != j) {
    throw DimensionError("restart: selection mask length must equal the number of steps");
  }
  const Index p = std::count(select.begin(), select.end(), true);
  if (p < 1 || p >= j) {
    throw PreconditionError("restart: need 0 < p < j, got p = " + std::to_string(p) +
                            ", j = " + std::to_string(j));
  }
  CompactBasis& b = state.basis;
  const Index d = b.d;
  const Index r = b.rank();

  GeneralizedSchur schur = generalized_schur(state.K.topRows(j), state.H.topRows(j));
  reorder_schur(schur, select);

  CMatrix Y1 = CMatrix::Zero(j + 1, p + 1);
  Y1.topLeftCorner(j, p) = schur.Q.leftCols(p);
  Y1(j, p) = 1.0;

  CMatrix Hn(p + 1, p);
  CMatrix Kn(p + 1, p);
  Hn.topRows(p) = schur.T.topLeftCorner(p, p);
  Kn.topRows(p) = schur.S.topLeftCorner(p, p);
  Hn.row(p) = state.H.row(j) * schur.Z.leftCols(p);
  Kn.row(p) = state.K.row(j) * schur.Z.leftCols(p);

  // Coefficients of the retained basis, then truncate Q to their joint range.
  CMatrix W(r, d * (p + 1));
  for (Index i = 0; i < d; ++i) {
    W.middleCols(i * (p + 1), p + 1) = b.R[static_cast<std::size_t>(i)] * Y1;
  }
  CMatrix Vn = b.V * Y1;

  RestartReport report;
  Index omega = 0;
  CMatrix Uo;
  if (r > 0) {
    Eigen::BDCSVD<CMatrix> svd(W, Eigen::ComputeThinU);
    const RVector& sig = svd.singularValues();
    const double smax = sig.size() > 0 ? sig(0) : 0.0;
    const double tol = static_cast<double>(std::max(d * r, p + 1)) * std::numeric_limits<double>::epsilon() * smax;
    for (Index i = 0; i < sig.size(); ++i) {
      if (sig(i) > tol) {
        ++omega;
      } else {
        report.dropped_singular_values.push_back(sig(i));
      }
    }
    Uo = svd.matrixU().leftCols(omega);
  }
  if (omega == 0) {
    throw RankCollapseError("restart: retained coefficients have numerical rank zero");
  }

  b.Q = r > 0 ? CMatrix(b.Q * Uo) : CMatrix(b.n, 0);
  std::vector<CMatrix> Rn(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) {
    Rn[static_cast<std::size_t>(i)] =
        omega > 0 ? CMatrix(Uo.adjoint() * W.middleCols(i * (p + 1), p + 1)) : CMatrix(0, p + 1);
  }

  // Restore exact orthonormality of the stacked coefficients.
  CMatrix S(d * omega + b.s, p + 1);
  for (Index i = 0; i < d; ++i) {
    S.middleRows(i * omega, omega) = Rn[static_cast<std::size_t>(i)];
  }
  S.bottomRows(b.s) = Vn;
  Eigen::HouseholderQR<CMatrix> qr(S);
  CMatrix Qr = qr.householderQ() * CMatrix::Identity(S.rows(), p + 1);
  CMatrix T = qr.matrixQR().topRows(p + 1).triangularView<Eigen::Upper>();
  for (Index i = 0; i <= p; ++i) {
    const double mag = std::abs(T(i, i));
    const Complex phase = mag > 0.0 ? T(i, i) / mag : Complex(1.0, 0.0);
    Qr.col(i) *= phase;
    T.row(i) *= std::conj(phase);
  }
  for (Index i = 0; i < d; ++i) {
    Rn[static_cast<std::size_t>(i)] = Qr.middleRows(i * omega, omega);
  }
  b.R = std::move(Rn);
  b.V = Qr.bottomRows(b.s);
  state.H = T * Hn;
  state.K = T * Kn;

  report.omega = omega;
  for (Index i = 0; i < p; ++i) {
    report.kept.push_back(schur.alpha(i) / schur.beta(i));
  }
  return report;
}

RestartReport restart(CompactState& state, Index p, const SelectionRule& rule, const std::vector<Complex>& forced) {
  const Index j = state.steps();
  if (p < 1 || p >= j) {
    throw PreconditionError("restart: need 0 < p < j, got p = " + std::to_string(p) +
                            ", j = " + std::to_string(j));
  }
  const GeneralizedSchur schur = generalized_schur(state.K.topRows(j), state.H.topRows(j));
  std::vector<Complex> values(static_cast<std::size_t>(j));
  for (Index i = 0; i < j; ++i) {
    const Complex beta = schur.beta(i);
    values[static_cast<std::size_t>(i)] =
        std::abs(beta) > 0.0 ? schur.alpha(i) / beta
                             : Complex(std::numeric_limits<double>::infinity(), 0.0);
  }
  std::vector<Index> forced_idx;
  std::vector<bool> used(values.size(), false);
  for (const Complex f : forced) {
    Index best = -1;
    double dist = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < j; ++i) {
      const double dd = std::abs(values[static_cast<std::size_t>(i)] - f);
      if (!used[static_cast<std::size_t>(i)] && dd < dist) {
        dist = dd;
        best = i;
      }
    }
    if (best >= 0) {
      used[static_cast<std::size_t>(best)] = true;
      forced_idx.push_back(best);
    }
  }
  const std::vector<Index> order = order_by_rule(values, rule, forced_idx);
  std::vector<bool> select(static_cast<std::size_t>(j), false);
  for (Index i = 0; i < p; ++i) {
    select[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = true;
  }
  return restart(state, select);
}

}  // namespace rcork
