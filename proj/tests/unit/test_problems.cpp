#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "rcork/errors.hpp"
#include "rcork/linearization.hpp"
#include "rcork/problems.hpp"

using namespace rcork;

namespace {

Index bandwidth(const SpMat& m) {
  Index bw = 0;
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (SpMat::InnerIterator it(m, k); it; ++it) {
      if (it.value() != Complex(0.0)) {
        bw = std::max<Index>(bw, std::abs(it.row() - it.col()));
      }
    }
  }
  return bw;
}

}  // namespace

TEST(GenExp1, MassAndStiffnessArePentadiagonalSymmetric) {
  const GeneratedProblem g = gen_exp1(50, 1, 10);
  const auto& rep = *g.problem;
  EXPECT_EQ(rep.degree(), 2);
  EXPECT_EQ(rep.s(), 1);
  for (int i : {0, 2}) {
    const CMatrix m(rep.coeff(i));
    EXPECT_EQ(bandwidth(rep.coeff(i)), 2);
    EXPECT_LE((m - m.transpose()).norm(), 0.0);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real());
    EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
  }
  EXPECT_EQ(rep.coeff(1).nonZeros(), 0);
  EXPECT_EQ(CMatrix(rep.C())(0, 0), Complex(1.0));
  EXPECT_EQ(CMatrix(rep.D())(0, 0), Complex(1.0));
  EXPECT_LE((CMatrix(rep.E()) - CMatrix(rep.F())).norm(), 0.0);
  EXPECT_EQ(g.prescribed.size(), 10u);
  for (const Complex& z : g.prescribed) {
    EXPECT_LT(z.imag(), 0.0);
    EXPECT_EQ(z.real(), 0.0);
  }
}

TEST(GenExp1, PrescribedEigenvaluesAreEigenvaluesOfTheLinearization) {
  const GeneratedProblem g = gen_exp1(60, 7, 10);
  CMatrix A, B;
  oracle::pencil(oracle::from_problem(*g.problem), A, B);
  const auto eig = oracle::pencil_eigenvalues(A, B);
  EXPECT_LE(oracle::max_nearest_distance(g.prescribed, eig), 1e-8);
  // No other eigenvalue has imaginary part below -9.
  Index deep = 0;
  for (const Complex& z : eig) {
    deep += z.imag() < -9.0 ? 1 : 0;
  }
  EXPECT_EQ(deep, 10);
}

TEST(GenExp1, DecoupledRowsFollowTheScalarFormula) {
  // A planted row l^2 a2 + a0 has roots +-i sqrt(a0/a2); both make R singular.
  const GeneratedProblem g = gen_exp1(30, 3, 4);
  for (const Complex& z : g.prescribed) {
    const Eigen::JacobiSVD<CMatrix> svd(CMatrix(evaluate(*g.problem, z)));
    EXPECT_LE(svd.singularValues().tail(1)(0), 1e-10 * svd.singularValues()(0));
    const Eigen::JacobiSVD<CMatrix> conj(CMatrix(evaluate(*g.problem, std::conj(z))));
    EXPECT_LE(conj.singularValues().tail(1)(0), 1e-10 * conj.singularValues()(0));
  }
}

TEST(GenExp1, InvalidSizesThrow) {
  EXPECT_THROW(gen_exp1(3, 1, 1), DimensionError);
  EXPECT_THROW(gen_exp1(10, 1, 10), DimensionError);
}

TEST(GenExp2, RationalPartMatchesConstruction) {
  const GeneratedProblem g = gen_exp2(40, 2, 6);
  const auto& rep = *g.problem;
  EXPECT_EQ(rep.degree(), 3);
  EXPECT_EQ(rep.s(), 2);
  CMatrix C(2, 2), D(2, 2);
  C << 105.0, 0.0, 0.0, -105.0;
  D << 1.0, 0.0, 0.0, 1.0;
  EXPECT_LE((CMatrix(rep.C()) - C).norm(), 0.0);
  EXPECT_LE((CMatrix(rep.D()) - D).norm(), 0.0);
  const Eigen::JacobiSVD<CMatrix> svd(CMatrix(rep.E()) * CMatrix(rep.F()).transpose());
  EXPECT_LE(svd.singularValues()(2), 1e-12);
  for (int i = 0; i <= 3; ++i) {
    EXPECT_LE(bandwidth(rep.coeff(i)), 3);
  }
}

TEST(GenExp2, PrescribedEigenvaluesAreTheSmallestOnes) {
  const GeneratedProblem g = gen_exp2(60, 9, 10);
  ASSERT_EQ(g.prescribed.size(), 10u);
  CMatrix A, B;
  oracle::pencil(oracle::from_problem(*g.problem), A, B);
  const auto eig = oracle::pencil_eigenvalues(A, B);
  EXPECT_LE(oracle::max_nearest_distance(g.prescribed, eig), 1e-8);
  Index small = 0;
  for (const Complex& z : eig) {
    small += std::abs(z) < 2.0 ? 1 : 0;
  }
  EXPECT_EQ(small, 10);
  for (const Complex& z : g.prescribed) {
    EXPECT_LE(std::abs(z), 1.0);
    EXPECT_GE(std::abs(z), 0.1 - 1e-15);
  }
}

TEST(GenExp2, OddCountPlantsARealRoot) {
  const GeneratedProblem g = gen_exp2(30, 5, 5);
  ASSERT_EQ(g.prescribed.size(), 5u);
  Index real = 0;
  for (const Complex& z : g.prescribed) {
    real += z.imag() == 0.0 ? 1 : 0;
  }
  EXPECT_EQ(real, 1);
}

TEST(GenExp2, InvalidSizesThrow) {
  EXPECT_THROW(gen_exp2(7, 1, 2), DimensionError);
  EXPECT_THROW(gen_exp2(8, 1, 10), DimensionError);
}

TEST(Generators, AreDeterministicInSeed) {
  const GeneratedProblem a = gen_exp2(50, 42, 6);
  const GeneratedProblem b = gen_exp2(50, 42, 6);
  const GeneratedProblem c = gen_exp2(50, 43, 6);
  EXPECT_LE((CMatrix(a.problem->coeff(0)) - CMatrix(b.problem->coeff(0))).norm(), 0.0);
  EXPECT_GT((CMatrix(a.problem->coeff(0)) - CMatrix(c.problem->coeff(0))).norm(), 0.0);
}
