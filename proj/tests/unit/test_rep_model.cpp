#include <gtest/gtest.h>

#include <random>

#include "dense_oracle.hpp"
#include "rcork/errors.hpp"
#include "rcork/rep_model.hpp"

using namespace rcork;

namespace {

SpMat diag(std::initializer_list<double> v) {
  SpMat m(static_cast<Index>(v.size()), static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) {
    m.insert(i, i) = x;
    ++i;
  }
  return m;
}

SpMat scalar(Complex v) {
  SpMat m(1, 1);
  m.insert(0, 0) = v;
  return m;
}

}  // namespace

TEST(RepModel, EvaluateMatchesDenseOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 3 + trial;
    const Index d = 1 + trial % 4;
    const Index s = trial % 5;
    const auto dense = oracle::random_problem(rng, n, d, s);
    const auto rep = oracle::to_problem(dense);
    const Complex mu(0.3 * trial - 1.0, 0.7);
    const CMatrix got = CMatrix(evaluate(*rep, mu));
    const CMatrix want = oracle::evaluate(dense, mu);
    EXPECT_LE((got - want).norm(), 1e-12 * want.norm()) << "trial " << trial;

    const CVector x = oracle::random_vector(rng, n);
    EXPECT_LE((apply_rational(*rep, mu, x) - want * x).norm(), 1e-12 * (want * x).norm());
  }
}

TEST(RepModel, HandComputedScalarProblem) {
  // R(l) = l^2 - 3 l + 2 - 1 / (4 - l); R(0) = 2 - 1/4.
  auto rep = RationalEigenproblem({scalar(2.0), scalar(-3.0), scalar(1.0)}, scalar(1.0), scalar(1.0), scalar(4.0),
                                  scalar(1.0));
  EXPECT_NEAR(std::abs(CMatrix(evaluate(rep, 0.0))(0, 0) - 1.75), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(CMatrix(evaluate(rep, 2.0))(0, 0) - Complex(-0.5)), 0.0, 1e-15);
}

TEST(RepModel, PolynomialProblemHasNoProperPart) {
  auto rep = RationalEigenproblem::polynomial({diag({1, 2}), diag({0, 0}), diag({-1, -1})});
  EXPECT_EQ(rep.s(), 0);
  EXPECT_EQ(proper_norm_fro(rep, Complex(5.0, 1.0)), 0.0);
  const CMatrix R = CMatrix(evaluate(rep, 1.0));
  EXPECT_NEAR(std::abs(R(0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(R(1, 1) - Complex(1.0)), 0.0, 1e-15);
}

TEST(RepModel, ShapeErrorsNameTheMatrix) {
  SpMat E(3, 1);
  SpMat F(2, 1);
  try {
    RationalEigenproblem({diag({1, 1}), diag({1, 1})}, E, F, scalar(1.0), scalar(1.0));
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    EXPECT_NE(std::string(e.what()).find("matrix E"), std::string::npos);
  }
  EXPECT_THROW(RationalEigenproblem({diag({1, 1}), diag({1, 1, 1})}, SpMat(2, 0), SpMat(2, 0), SpMat(0, 0),
                                    SpMat(0, 0)),
               DimensionError);
  EXPECT_THROW(RationalEigenproblem({diag({1, 1})}, SpMat(2, 0), SpMat(2, 0), SpMat(0, 0), SpMat(0, 0)),
               DimensionError);
}

TEST(RepModel, SingularDIsRejected) {
  SpMat E(2, 1);
  E.insert(0, 0) = 1.0;
  EXPECT_THROW(RationalEigenproblem({diag({1, 1}), diag({1, 1})}, E, E, scalar(1.0), SpMat(1, 1)),
               SingularMatrixError);
}

TEST(RepModel, EvaluatingAtAPoleThrows) {
  SpMat E(2, 1);
  E.insert(1, 0) = 1.0;
  auto rep = RationalEigenproblem({diag({1, 1}), diag({1, 1})}, E, E, scalar(2.0), scalar(1.0));
  EXPECT_THROW(evaluate(rep, 2.0), PoleError);
  EXPECT_THROW(proper_norm_fro(rep, 2.0), PoleError);
  EXPECT_NO_THROW(evaluate(rep, Complex(2.0, 1e-3)));
}

TEST(RepModel, ProperNormTraceIdentityMatchesDense) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Index s = 1 + trial % 6;
    const auto dense = oracle::random_problem(rng, 12, 2, s);
    const auto rep = oracle::to_problem(dense);
    const Complex mu(0.5 * trial, -0.25);
    const double want = (dense.E * (dense.C - mu * dense.D).inverse() * dense.F.transpose()).norm();
    EXPECT_LE(std::abs(proper_norm_fro(*rep, mu) - want), 1e-12 * want);
  }
}

TEST(RepModel, RelativeResidualOfExactEigenpairIsTiny) {
  // Diagonal problem with eigenvalue 1 in the first row.
  auto rep = RationalEigenproblem::polynomial({diag({-1, 3}), diag({1, 1})});
  CVector x = CVector::Unit(2, 0);
  EXPECT_LE(relative_residual(rep, 1.0, x), 1e-16);
  EXPECT_GT(relative_residual(rep, 1.0, CVector::Unit(2, 1)), 0.1);
}

TEST(RepModel, RelativeResidualMatchesDefinition) {
  std::mt19937_64 rng(8);
  const auto dense = oracle::random_problem(rng, 7, 3, 2);
  const auto rep = oracle::to_problem(dense);
  const Complex lambda(1.3, -0.4);
  const CVector x = oracle::random_vector(rng, 7);
  double scale = 0.0;
  for (int i = 0; i <= 3; ++i) {
    scale += std::pow(std::abs(lambda), i) * dense.P[static_cast<std::size_t>(i)].norm();
  }
  scale += (dense.E * (dense.C - lambda * dense.D).inverse() * dense.F.transpose()).norm();
  const double want = (oracle::evaluate(dense, lambda) * x).norm() / (scale * x.norm());
  EXPECT_NEAR(relative_residual(*rep, lambda, x), want, 1e-13 * want);
}

TEST(RepModel, ResidualOfZeroVectorThrows) {
  auto rep = RationalEigenproblem::polynomial({diag({1, 1}), diag({1, 1})});
  EXPECT_THROW(relative_residual(rep, 0.5, CVector::Zero(2)), ZeroVectorError);
}

TEST(RepModel, RecoverEigenvectorPicksBlockByModulus) {
  BlockVector z(2, 3, 1);
  z.block(0) << 4.0, 0.0;
  z.block(1) << 0.0, 0.0;
  z.block(2) << 0.0, 2.0;
  z.tail() << 1.0;
  const CVector big = recover_eigenvector(z, 3.0);
  EXPECT_NEAR(std::abs(big(0) - Complex(1.0)), 0.0, 1e-15);
  const CVector small = recover_eigenvector(z, 0.5);
  EXPECT_NEAR(std::abs(small(1) - Complex(1.0)), 0.0, 1e-15);
  z.block(2).setZero();
  EXPECT_THROW(recover_eigenvector(z, Complex(0.0, 1.0)), ZeroVectorError);
}

TEST(RepModel, TailConsistencyVanishesOnStructuredVectors) {
  std::mt19937_64 rng(3);
  const auto dense = oracle::random_problem(rng, 5, 2, 3);
  const auto rep = oracle::to_problem(dense);
  const Complex lambda(0.2, 0.9);
  const CVector x = oracle::random_vector(rng, 5);
  BlockVector z(5, 2, 3);
  z.block(0) = lambda * x;
  z.block(1) = x;
  z.tail() = -(dense.C - lambda * dense.D).partialPivLu().solve(dense.F.transpose() * x);
  EXPECT_LE(tail_consistency(*rep, lambda, z), 1e-13);
  z.tail() *= 2.0;
  EXPECT_NEAR(tail_consistency(*rep, lambda, z), 0.5, 1e-12);
}

TEST(RepModel, LeadingCoefficientConditioningIsReported) {
  auto good = RationalEigenproblem::polynomial({diag({1, 1}), diag({1, 2})});
  EXPECT_FALSE(check_leading_coefficient(good).ill_conditioned);
  auto poor = RationalEigenproblem::polynomial({diag({1, 1}), diag({1, 1e-15})});
  EXPECT_TRUE(check_leading_coefficient(poor).ill_conditioned);
  auto singular = RationalEigenproblem::polynomial({diag({1, 1}), diag({1, 0})});
  EXPECT_THROW(check_leading_coefficient(singular), SingularMatrixError);
}

TEST(RepModel, CachedNormsMatchCoefficients) {
  std::mt19937_64 rng(2);
  const auto dense = oracle::random_problem(rng, 6, 2, 2);
  const auto rep = oracle::to_problem(dense);
  for (int i = 0; i <= 2; ++i) {
    EXPECT_NEAR(rep->coeff_norm_fro(i), dense.P[static_cast<std::size_t>(i)].norm(), 1e-12);
  }
  EXPECT_LE((rep->EhE() - dense.E.adjoint() * dense.E).norm(), 1e-12);
  EXPECT_LE((rep->FtFbar() - dense.F.transpose() * dense.F.conjugate()).norm(), 1e-12);
}
