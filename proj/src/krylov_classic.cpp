#include "rcork/krylov_classic.hpp"

#include <cmath>
#include <limits>

#include "rcork/dense_eig.hpp"
#include "rcork/errors.hpp"

namespace rcork {

DensePencil::DensePencil(CMatrix A, CMatrix B) : A_(std::move(A)), B_(std::move(B)) {
  if (A_.rows() != A_.cols() || B_.rows() != B_.cols() || A_.rows() != B_.rows()) {
    throw DimensionError("DensePencil: A and B must be square and of equal size");
  }
}

CVector DensePencil::solve(Complex theta, const CVector& u) const {
  auto it = lu_.find(theta);
  if (it == lu_.end()) {
    auto lu = std::make_shared<Eigen::PartialPivLU<CMatrix>>(A_ - theta * B_);
    if (!(lu->rcond() > std::numeric_limits<double>::epsilon())) {
      throw SingularShiftError("DensePencil: A - theta B is singular at the shift");
    }
    it = lu_.emplace(theta, std::move(lu)).first;
  }
  return it->second->solve(B_ * u);
}

BlockVector StructuredPencil::wrap(const CVector& v) const {
  return BlockVector(pencil_.n(), pencil_.d(), pencil_.s(), v);
}

CVector StructuredPencil::apply_A(const CVector& v) const {
  return pencil_.apply_A(wrap(v)).data();
}

CVector StructuredPencil::apply_B(const CVector& v) const {
  return pencil_.apply_B(wrap(v)).data();
}

CVector StructuredPencil::solve(Complex theta, const CVector& u) const {
  const auto ctx = cache_->get(theta);
  return solve_shifted(*ctx, wrap(u)).data();
}

KrylovState rk_init(const CVector& v0) {
  const double nrm = v0.norm();
  if (!(nrm > 0.0)) {
    throw ZeroVectorError("rk_init: starting vector is zero");
  }
  KrylovState state;
  state.V = v0 / nrm;
  state.H.resize(1, 0);
  state.K.resize(1, 0);
  return state;
}

void rk_step(const PencilOperator& op, KrylovState& state, Complex theta) {
  const Index j = state.steps();
  if (state.V.rows() != op.size()) {
    throw DimensionError("rk_step: basis length does not match the operator");
  }
  CVector w = op.solve(theta, state.V.col(j));
  const double wnorm = w.norm();
  CVector h = state.V.adjoint() * w;
  w -= state.V * h;
  const CVector h2 = state.V.adjoint() * w;
  w -= state.V * h2;
  h += h2;
  const double beta = w.norm();
  if (!(beta > 1e-14 * wnorm)) {
    throw BreakdownError("rk_step: rational Krylov breakdown at step " + std::to_string(j + 1));
  }

  state.V.conservativeResize(Eigen::NoChange, j + 2);
  state.V.col(j + 1) = w / beta;

  state.H.conservativeResize(j + 2, j + 1);
  state.K.conservativeResize(j + 2, j + 1);
  state.H.row(j + 1).setZero();
  state.K.row(j + 1).setZero();
  state.H.col(j).head(j + 1) = h;
  state.H(j + 1, j) = beta;
  state.K.col(j) = theta * state.H.col(j);
  state.K(j, j) += 1.0;
  state.shifts.push_back(theta);
}

KrylovState rk_run(const PencilOperator& op, const CVector& v0, const std::vector<Complex>& shifts) {
  KrylovState state = rk_init(v0);
  for (const Complex theta : shifts) {
    rk_step(op, state, theta);
  }
  return state;
}

std::vector<RitzPair> ritz_pairs(const CMatrix& H, const CMatrix& K) {
  const Index j = H.cols();
  if (H.rows() != j + 1 || K.rows() != j + 1 || K.cols() != j) {
    throw DimensionError("ritz_pairs: expected (j+1) x j matrices");
  }
  std::vector<RitzPair> out;
  if (j == 0) {
    return out;
  }
  const GeneralizedEigs eig = generalized_eig(K.topRows(j), H.topRows(j), true);
  for (Index i = 0; i < j; ++i) {
    const Complex a = eig.alpha[i];
    const Complex b = eig.beta[i];
    if (!(std::abs(b) > 100.0 * std::numeric_limits<double>::epsilon() * std::abs(a))) {
      continue;
    }
    RitzPair pair;
    pair.value = a / b;
    const double tn = eig.vectors.col(i).norm();
    if (!(tn > 0.0)) {
      continue;
    }
    pair.t = eig.vectors.col(i) / tn;
    const CVector Ht = H * pair.t;
    const Complex last = (K.row(j) * pair.t)(0) - pair.value * Ht(j);
    const double hn = Ht.norm();
    pair.cheap_residual = hn > 0.0 ? std::abs(last) / hn : std::numeric_limits<double>::infinity();
    out.push_back(std::move(pair));
  }
  return out;
}

}  // namespace rcork
