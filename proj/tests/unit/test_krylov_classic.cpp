#include <gtest/gtest.h>

#include <random>

#include "dense_oracle.hpp"
#include "rcork/errors.hpp"
#include "rcork/krylov_classic.hpp"

using namespace rcork;

namespace {

struct Fixture {
  oracle::DenseProblem dense;
  CMatrix A, B;
};

Fixture make(std::uint64_t seed, Index n, Index d, Index s) {
  std::mt19937_64 rng(seed);
  Fixture f;
  f.dense = oracle::random_problem(rng, n, d, s);
  oracle::pencil(f.dense, f.A, f.B);
  return f;
}

std::vector<Complex> shifts(Index count) {
  std::vector<Complex> out;
  for (Index k = 0; k < count; ++k) {
    out.emplace_back(0.3 * static_cast<double>(k % 3) - 0.2, 0.5);
  }
  return out;
}

}  // namespace

TEST(KrylovClassic, DecompositionHolds) {
  const Fixture f = make(12, 6, 2, 2);
  DensePencil op(f.A, f.B);
  std::mt19937_64 rng(1);
  const KrylovState st = rk_run(op, oracle::random_vector(rng, f.A.rows()), shifts(8));
  EXPECT_EQ(st.steps(), 8);
  EXPECT_LE((st.V.adjoint() * st.V - CMatrix::Identity(9, 9)).norm(), 1e-13);
  const double res = (f.A * st.V * st.H - f.B * st.V * st.K).norm();
  EXPECT_LE(res, 1e-12 * (f.A.norm() * st.H.norm() + f.B.norm() * st.K.norm()));
  for (Index j = 0; j < 8; ++j) {
    for (Index i = j + 2; i < 9; ++i) {
      EXPECT_EQ(st.H(i, j), Complex(0.0));
      EXPECT_EQ(st.K(i, j), Complex(0.0));
    }
  }
}

TEST(KrylovClassic, KColumnIsShiftTimesHPlusUnit) {
  const Fixture f = make(3, 4, 3, 1);
  DensePencil op(f.A, f.B);
  std::mt19937_64 rng(2);
  const auto th = shifts(5);
  const KrylovState st = rk_run(op, oracle::random_vector(rng, f.A.rows()), th);
  for (Index j = 0; j < 5; ++j) {
    CVector want = th[static_cast<std::size_t>(j)] * st.H.col(j);
    want(j) += 1.0;
    EXPECT_LE((st.K.col(j) - want).norm(), 1e-15 * want.norm());
  }
}

TEST(KrylovClassic, StructuredAndDenseOperatorsAgree) {
  const Fixture f = make(7, 5, 3, 2);
  DensePencil dense(f.A, f.B);
  StructuredPencil structured(LinearizationPencil(oracle::to_problem(f.dense)));
  std::mt19937_64 rng(3);
  const CVector v0 = oracle::random_vector(rng, f.A.rows());
  const KrylovState a = rk_run(dense, v0, shifts(10));
  const KrylovState b = rk_run(structured, v0, shifts(10));
  EXPECT_LE((a.H - b.H).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((a.K - b.K).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(KrylovClassic, InvariantStartBreaksDown) {
  // A = diag(1, 2, 3), B = I: e_1 spans an invariant subspace.
  CMatrix A = CMatrix::Zero(3, 3);
  A.diagonal() << 1.0, 2.0, 3.0;
  DensePencil op(A, CMatrix::Identity(3, 3));
  KrylovState st = rk_init(CVector::Unit(3, 0));
  EXPECT_THROW(rk_step(op, st, 0.5), BreakdownError);
}

TEST(KrylovClassic, ZeroStartThrows) { EXPECT_THROW(rk_init(CVector::Zero(4)), ZeroVectorError); }

TEST(KrylovClassic, FullSubspaceThenBreakdown) {
  const Fixture f = make(19, 3, 2, 1);
  const Index N = f.A.rows();
  DensePencil op(f.A, f.B);
  std::mt19937_64 rng(4);
  KrylovState st = rk_init(oracle::random_vector(rng, N));
  const auto th = shifts(N - 1);
  for (const Complex t : th) {
    rk_step(op, st, t);
  }
  // N - 1 steps span the whole space, so the next direction has nothing new.
  EXPECT_EQ(st.V.cols(), N);
  EXPECT_LE((st.V.adjoint() * st.V - CMatrix::Identity(N, N)).norm(), 1e-12);
  EXPECT_THROW(rk_step(op, st, Complex(0.1, 0.3)), BreakdownError);
}

TEST(KrylovClassic, CheapEstimateEqualsLinearizedResidualRatio) {
  const Fixture f = make(23, 8, 2, 2);
  DensePencil op(f.A, f.B);
  std::mt19937_64 rng(5);
  const KrylovState st = rk_run(op, oracle::random_vector(rng, f.A.rows()), shifts(6));
  for (const auto& pair : ritz_pairs(st.H, st.K)) {
    const CVector z = st.V * (st.H * pair.t);
    // A z - lambda B z = B V (K - lambda H) t, and only its last row survives.
    const CVector r = st.K * pair.t - pair.value * (st.H * pair.t);
    EXPECT_LE(r.head(6).norm(), 1e-9 * r.norm() + 1e-12);
    const double want = r.norm() / (st.H * pair.t).norm();
    EXPECT_NEAR(pair.cheap_residual, want, 1e-9 * std::max(want, 1e-3));
    const CVector lin = f.A * z - pair.value * (f.B * z);
    EXPECT_LE(lin.norm(), (f.B * st.V).norm() * r.norm() * 1.0000001 + 1e-12);
  }
}
