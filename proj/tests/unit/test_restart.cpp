#include <gtest/gtest.h>

#include <random>

#include "dense_oracle.hpp"
#include "rcork/dense_eig.hpp"
#include "rcork/errors.hpp"
#include "rcork/problems.hpp"
#include "rcork/restart.hpp"

using namespace rcork;

namespace {

std::vector<Complex> eigenvalues_of(const CMatrix& K, const CMatrix& H) {
  return oracle::pencil_eigenvalues(K, H);
}

CompactState grown_state(const GeneratedProblem& g, Index steps, std::uint64_t seed, ShiftContextCache& cache) {
  std::mt19937_64 rng(seed);
  const auto& rep = *g.problem;
  CVector v = oracle::random_vector(rng, rep.n() * rep.degree() + rep.s());
  CompactState st = rcork_init(BlockVector(rep.n(), rep.degree(), rep.s(), v / v.norm()));
  for (Index k = 0; k < steps; ++k) {
    rcork_step(cache, st, g.shifts[static_cast<std::size_t>(k) % g.shifts.size()]);
  }
  return st;
}

}  // namespace

TEST(OrderedSchur, TriangularPairWithLeadingSelectionIsFixedPoint) {
  CMatrix S(2, 2), T(2, 2);
  S << 1.0, 0.0, 0.0, 2.0;
  T << 1.0, 0.0, 0.0, 1.0;
  GeneralizedSchur g = generalized_schur(S, T);
  EXPECT_LE((g.Q.cwiseAbs() - CMatrix::Identity(2, 2)).norm(), 1e-15);
  reorder_schur(g, {true, false});
  EXPECT_LE((g.Q.cwiseAbs() - CMatrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_LE((g.Z.cwiseAbs() - CMatrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(OrderedSchur, SwapMovesSelectedEigenvalueFirst) {
  CMatrix K(2, 2), H(2, 2);
  K << 1.0, 3.0, 0.0, 5.0;
  H << 1.0, 1.0, 0.0, 1.0;
  GeneralizedSchur g = generalized_schur(K, H);
  const Complex second = g.alpha(1) / g.beta(1);
  reorder_schur(g, {false, true});
  EXPECT_NEAR(std::abs(g.S(0, 0) / g.T(0, 0) - second), 0.0, 1e-13);
  EXPECT_LE((g.Q * g.S * g.Z.adjoint() - K).norm(), 1e-13 * K.norm());
  EXPECT_LE((g.Q * g.T * g.Z.adjoint() - H).norm(), 1e-13 * H.norm());
}

TEST(OrderedSchur, RandomPairKeepsSpectrum) {
  std::mt19937_64 rng(3);
  const CMatrix K = oracle::random_matrix(rng, 12, 12);
  const CMatrix H = oracle::random_matrix(rng, 12, 12);
  GeneralizedSchur g = generalized_schur(K, H);
  std::vector<bool> sel(12, false);
  for (int i : {2, 5, 7, 11}) {
    sel[static_cast<std::size_t>(i)] = true;
  }
  std::vector<Complex> chosen;
  for (int i : {2, 5, 7, 11}) {
    chosen.push_back(g.alpha(i) / g.beta(i));
  }
  reorder_schur(g, sel);
  std::vector<Complex> lead, all;
  for (Index i = 0; i < 12; ++i) {
    all.push_back(g.S(i, i) / g.T(i, i));
    if (i < 4) {
      lead.push_back(g.S(i, i) / g.T(i, i));
    }
  }
  EXPECT_LE(oracle::multiset_distance(lead, chosen), 1e-10);
  EXPECT_LE(oracle::multiset_distance(all, eigenvalues_of(K, H)), 1e-10);
}

TEST(Selection, OrderingContracts) {
  const std::vector<Complex> v{{3.0, 0.0}, {0.5, 0.0}, {0.0, -4.0}, {-1.0, 1.0}};
  SelectionRule closest;
  closest.kind = Selection::ClosestToTarget;
  EXPECT_EQ(order_by_rule(v, closest), (std::vector<Index>{1, 3, 0, 2}));
  SelectionRule negimag;
  negimag.kind = Selection::LargestNegativeImag;
  EXPECT_EQ(order_by_rule(v, negimag).front(), 2);
  SelectionRule custom;
  custom.kind = Selection::Custom;
  custom.score = [](Complex z) { return -z.real(); };
  EXPECT_EQ(order_by_rule(v, custom).front(), 0);
  EXPECT_EQ(order_by_rule(v, closest, {2}), (std::vector<Index>{2, 1, 3, 0}));
}

TEST(Restart, PreservesSelectedRitzValuesAndRecurrence) {
  const GeneratedProblem g = gen_exp2(120, 4, 10);
  ShiftContextCache cache(g.problem);
  CompactState st = grown_state(g, 20, 5, cache);
  SelectionRule rule;
  const Index j = st.steps();

  const GeneralizedSchur pre = generalized_schur(st.K.topRows(j), st.H.topRows(j));
  std::vector<Complex> values;
  for (Index i = 0; i < j; ++i) {
    values.push_back(pre.alpha(i) / pre.beta(i));
  }
  const auto order = order_by_rule(values, rule);
  std::vector<Complex> chosen;
  for (Index i = 0; i < 12; ++i) {
    chosen.push_back(values[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
  }

  const RestartReport rep = restart(st, 12, rule);
  EXPECT_EQ(st.steps(), 12);
  EXPECT_LE(rep.omega, g.problem->degree() + 12);
  EXPECT_LE(oracle::multiset_distance(eigenvalues_of(st.K.topRows(12), st.H.topRows(12)), chosen), 1e-12);
  EXPECT_LE(oracle::multiset_distance(rep.kept, chosen), 1e-12);
  EXPECT_LE(q_orthogonality(st.basis), 1e-12);
  EXPECT_LE(r_orthogonality(st.basis), 1e-12);
  LinearizationPencil pencil(g.problem);
  EXPECT_LE(recurrence_residual(pencil, st), 1e-11);

  // Continued expansion adds Hessenberg-structured columns.
  for (Index k = 0; k < 5; ++k) {
    rcork_step(cache, st, 0.0);
  }
  for (Index c = 12; c < st.steps(); ++c) {
    for (Index r = c + 2; r < st.H.rows(); ++r) {
      EXPECT_EQ(st.H(r, c), Complex(0.0));
      EXPECT_EQ(st.K(r, c), Complex(0.0));
    }
  }
  EXPECT_LE(recurrence_residual(pencil, st), 1e-11);
}

TEST(Restart, ForcedValuesAreKept) {
  const GeneratedProblem g = gen_exp1(150, 2, 10);
  ShiftContextCache cache(g.problem);
  CompactState st = grown_state(g, 15, 6, cache);
  const Index j = st.steps();
  const GeneralizedSchur pre = generalized_schur(st.K.topRows(j), st.H.topRows(j));
  // Force the Ritz value that closest-to-target would rank last.
  SelectionRule rule;
  rule.target = Complex(0.0, -10.9);
  std::vector<Complex> values;
  for (Index i = 0; i < j; ++i) {
    values.push_back(pre.alpha(i) / pre.beta(i));
  }
  const Complex worst = values[static_cast<std::size_t>(order_by_rule(values, rule).back())];
  const RestartReport rep = restart(st, 5, rule, {worst});
  EXPECT_LE(oracle::max_nearest_distance({worst}, rep.kept), 1e-10);
}

TEST(Restart, PreconditionViolations) {
  const GeneratedProblem g = gen_exp2(40, 1, 4);
  ShiftContextCache cache(g.problem);
  CompactState st = grown_state(g, 6, 7, cache);
  SelectionRule rule;
  EXPECT_THROW(restart(st, 6, rule), PreconditionError);
  EXPECT_THROW(restart(st, 0, rule), PreconditionError);
  EXPECT_THROW(restart(st, std::vector<bool>(5, true)), DimensionError);
}
