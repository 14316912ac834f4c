#include "rcork/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/SparseLU>

#include "rcork/errors.hpp"

namespace rcork {

namespace {

using Triplet = Eigen::Triplet<Complex, Index>;

SpMat banded(Index n, const std::vector<std::pair<Index, double>>& bands) {
  std::vector<Triplet> t;
  for (const auto& [offset, value] : bands) {
    for (Index i = 0; i < n; ++i) {
      const Index j = i + offset;
      if (j >= 0 && j < n) {
        t.emplace_back(i, j, Complex(value, 0.0));
      }
    }
  }
  SpMat m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SpMat diagonal(const RVector& v) {
  SpMat m(v.size(), v.size());
  std::vector<Triplet> t;
  for (Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0.0) {
      t.emplace_back(i, i, Complex(v(i), 0.0));
    }
  }
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

void require_nonsingular(const SpMat& m, const char* name) {
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(m);
  if (lu.info() != Eigen::Success) {
    throw NumericalError(std::string("generator: conjugation matrix ") + name + " is singular");
  }
}

SpMat pruned(SpMat m) {
  m.prune(Complex(0.0, 0.0));
  m.makeCompressed();
  return m;
}

// Coefficients (c0, c1, c2, c3) of a3 (x - r1)(x - r2)(x - r3) for real or
// conjugate-pair roots; imaginary parts cancel.
std::array<double, 4> cubic(double a3, Complex r1, Complex r2, Complex r3) {
  const Complex e1 = r1 + r2 + r3;
  const Complex e2 = r1 * r2 + r1 * r3 + r2 * r3;
  const Complex e3 = r1 * r2 * r3;
  return {-a3 * e3.real(), a3 * e2.real(), -a3 * e1.real(), a3};
}

}  // namespace

GeneratedProblem gen_exp1(Index n, std::uint64_t seed, Index k_eigs) {
  if (n < 4) {
    throw DimensionError("gen_exp1: n must be at least 4");
  }
  if (k_eigs < 0 || k_eigs > n - 1) {
    throw DimensionError("gen_exp1: k_eigs must lie in [0, n-1]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mass(1.0, 2.0);
  std::uniform_real_distribution<double> low(0.5, 8.0);

  std::vector<Index> rows(static_cast<std::size_t>(n - 1));
  std::iota(rows.begin(), rows.end(), Index{0});
  std::shuffle(rows.begin(), rows.end(), rng);

  RVector omega(n);
  for (Index i = 0; i < n; ++i) {
    omega(i) = low(rng);
  }
  GeneratedProblem out;
  for (Index k = 0; k < k_eigs; ++k) {
    const double w = 10.0 + 2.0 * static_cast<double>(k) / static_cast<double>(std::max<Index>(k_eigs, 1));
    omega(rows[static_cast<std::size_t>(k)]) = w;
    out.prescribed.emplace_back(0.0, -w);
  }
  RVector a2(n);
  RVector a0(n);
  for (Index i = 0; i < n; ++i) {
    a2(i) = mass(rng);
    a0(i) = a2(i) * omega(i) * omega(i);
  }

  const SpMat P = banded(n, {{0, 1.0}, {1, 0.5}, {-1, 1.0 / 3.0}});
  require_nonsingular(P, "P");
  const SpMat Pt = P.transpose();
  SpMat M = pruned(P * diagonal(a2) * Pt);
  SpMat K = pruned(P * diagonal(a0) * Pt);
  SpMat pn = P.col(n - 1);
  SpMat one(1, 1);
  one.insert(0, 0) = Complex(1.0, 0.0);

  out.problem = std::make_shared<const RationalEigenproblem>(std::vector<SpMat>{K, SpMat(n, n), M}, pn, pn, one,
                                                             one);
  out.shifts = {Complex(0.0, -10.3), Complex(0.0, -10.9), Complex(0.0, -11.5)};
  out.experiment = "exp1";
  out.n = n;
  out.seed = seed;
  return out;
}

GeneratedProblem gen_exp2(Index n, std::uint64_t seed, Index k_eigs) {
  if (n < 8) {
    throw DimensionError("gen_exp2: n must be at least 8");
  }
  // Rows touched by the rational term are left for non-target roots.
  std::vector<Index> free_rows;
  for (Index i = 0; i < n; ++i) {
    const bool touched = i == 0 || i == 1 || i == 4 || i == 5 || i >= n - 4;
    if (!touched) {
      free_rows.push_back(i);
    }
  }
  const Index target_rows = (k_eigs + 1) / 2;
  if (k_eigs < 0 || target_rows > static_cast<Index>(free_rows.size())) {
    throw DimensionError("gen_exp2: not enough free rows for " + std::to_string(k_eigs) + " eigenvalues");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lead(1.0, 2.0);
  std::uniform_real_distribution<double> small(0.1, 1.0);
  std::uniform_real_distribution<double> far(3.0, 6.0);
  std::uniform_real_distribution<double> angle(0.2, M_PI - 0.2);
  std::bernoulli_distribution coin(0.5);
  std::shuffle(free_rows.begin(), free_rows.end(), rng);

  auto far_real = [&]() { return Complex(coin(rng) ? far(rng) : -far(rng), 0.0); };
  auto pair_root = [&](double modulus) { return std::polar(modulus, angle(rng)); };

  std::vector<Index> role(static_cast<std::size_t>(n), 0);
  for (Index k = 0; k < target_rows; ++k) {
    const bool single = (k_eigs % 2 == 1) && k == target_rows - 1;
    role[static_cast<std::size_t>(free_rows[static_cast<std::size_t>(k)])] = single ? 2 : 1;
  }

  GeneratedProblem out;
  std::array<RVector, 4> c;
  for (auto& ci : c) {
    ci.resize(n);
  }
  for (Index i = 0; i < n; ++i) {
    const double a3 = lead(rng);
    std::array<double, 4> coef{};
    const Index kind = role[static_cast<std::size_t>(i)];
    if (kind == 1) {
      const Complex t = pair_root(small(rng));
      coef = cubic(a3, t, std::conj(t), far_real());
      out.prescribed.push_back(t);
      out.prescribed.push_back(std::conj(t));
    } else if (kind == 2) {
      const Complex t(coin(rng) ? small(rng) : -small(rng), 0.0);
      const Complex f = pair_root(far(rng));
      coef = cubic(a3, t, f, std::conj(f));
      out.prescribed.push_back(t);
    } else {
      const Complex f = pair_root(far(rng));
      coef = cubic(a3, far_real(), f, std::conj(f));
    }
    for (int p = 0; p < 4; ++p) {
      c[static_cast<std::size_t>(p)](i) = coef[static_cast<std::size_t>(p)];
    }
  }

  const SpMat P = banded(n, {{0, 1.0}, {1, 0.5}, {2, 1.0 / 3.0}, {-1, -0.25}, {-2, -0.2}});
  const SpMat Q = banded(n, {{0, -1.0}, {1, -1.0 / 3.0}, {-1, 0.5}});
  require_nonsingular(P, "P");
  require_nonsingular(Q, "Q");

  std::vector<SpMat> coeffs;
  for (int p = 0; p < 4; ++p) {
    coeffs.push_back(pruned(P * diagonal(c[static_cast<std::size_t>(p)]) * Q));
  }
  std::vector<Triplet> te{{0, 0, 1.0}, {1, 0, 1.0}, {4, 1, 1.0}, {5, 1, 1.0}};
  std::vector<Triplet> tf{{n - 4, 0, 1.0}, {n - 3, 0, 1.0}, {n - 2, 1, 1.0}, {n - 1, 1, 1.0}};
  SpMat E0(n, 2);
  SpMat F0(n, 2);
  E0.setFromTriplets(te.begin(), te.end());
  F0.setFromTriplets(tf.begin(), tf.end());
  SpMat C(2, 2);
  C.insert(0, 0) = 105.0;
  C.insert(1, 1) = -105.0;
  SpMat D(2, 2);
  D.insert(0, 0) = 1.0;
  D.insert(1, 1) = 1.0;
  C.makeCompressed();
  D.makeCompressed();

  SpMat E = pruned(P * E0);
  SpMat F = pruned(SpMat(Q.transpose()) * F0);
  out.problem = std::make_shared<const RationalEigenproblem>(std::move(coeffs), E, F, C, D);
  out.shifts = {Complex(0.0, 0.0)};
  out.experiment = "exp2";
  out.n = n;
  out.seed = seed;
  return out;
}

}  // namespace rcork
