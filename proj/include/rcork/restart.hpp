#pragma once

#include <functional>
#include <vector>

#include "rcork/rcork_core.hpp"

namespace rcork {

enum class Selection {
  ClosestToTarget,
  LargestNegativeImag,
  Custom,
};

/// Orders Ritz values by preference. For Custom, score is called on each value
/// and lower scores are preferred.
struct SelectionRule {
  Selection kind = Selection::ClosestToTarget;
  Complex target{0.0, 0.0};
  std::function<double(Complex)> score;

  double rank(Complex value) const;
};

/// Indices of values sorted from most to least preferred. Indices in forced
/// come first, in their given order.
std::vector<Index> order_by_rule(const std::vector<Complex>& values, const SelectionRule& rule,
                                 const std::vector<Index>& forced = {});

struct RestartReport {
  Index omega = 0;
  std::vector<double> dropped_singular_values;
  std::vector<Complex> kept;
};

/// Implicit restart of a compact decomposition with j steps, keeping the Ritz
/// values flagged in select (length j, p flags set, 0 < p < j). Flags refer to
/// the eigenvalue order of generalized_schur(K_j, H_j). The result has
/// p steps, Q truncated to the numerical rank omega of the transformed
/// coefficient blocks, and orthonormal stacked coefficients.
/// Throws PreconditionError, NumericalError or RankCollapseError.
RestartReport restart(CompactState& state, const std::vector<bool>& select);

/// Convenience: keep the p most preferred Ritz values of the square pencil
/// (K_j, H_j); values listed in forced (as approximate eigenvalues) are kept first.
RestartReport restart(CompactState& state, Index p, const SelectionRule& rule,
                      const std::vector<Complex>& forced = {});

}  // namespace rcork
