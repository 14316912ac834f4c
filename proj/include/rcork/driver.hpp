#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rcork/rcork_core.hpp"
#include "rcork/restart.hpp"

namespace rcork {

/// Shift sequence: one fixed shift, a list cycled once per iteration, or a
/// callback of the iteration number (0-based).
struct ShiftSchedule {
  enum class Kind { Fixed, Cyclic, Callback };
  Kind kind = Kind::Fixed;
  std::vector<Complex> shifts{Complex(0.0, 0.0)};
  std::function<Complex(Index)> callback;

  static ShiftSchedule fixed(Complex mu) { return {Kind::Fixed, {mu}, {}}; }
  static ShiftSchedule cyclic(std::vector<Complex> list) { return {Kind::Cyclic, std::move(list), {}}; }
  static ShiftSchedule from(std::function<Complex(Index)> f) { return {Kind::Callback, {}, std::move(f)}; }

  Complex at(Index iteration) const;
};

enum class StartKind { Random, Collinear, Given };

struct SolveConfig {
  Index nev = 6;
  ShiftSchedule shifts;
  /// Maximum basis dimension before a restart.
  Index m = 30;
  /// Ritz values kept by a restart.
  Index p = 20;
  double tol = 1e-10;
  /// Full residuals are computed only for pairs whose cheap estimate is below this.
  double cheap_tol = 1e-3;
  Index max_restarts = 10;
  Index max_iterations = 1000;
  SelectionRule selection;
  /// Full residual checks every stride iterations (and before each restart).
  Index stride = 5;
  StartKind start = StartKind::Random;
  std::optional<BlockVector> start_vector;
  std::uint64_t seed = 1;
  /// Disable restarting; the run stops at dimension m instead.
  bool restart = true;

  /// Throws ConfigError.
  void validate() const;
};

struct Eigenpair {
  Complex value;
  CVector x;
  double residual = 0.0;
  /// Linearization eigenvector the pair was recovered from.
  BlockVector z;
};

struct IterationLog {
  Index iteration = 0;
  Index j = 0;
  Index rank = 0;
  Index converged = 0;
  double max_residual = 0.0;
  long long compact_memory = 0;
  long long classical_memory = 0;
};

enum class Termination { Converged, BudgetExhausted };

struct SolveResult {
  /// Sorted by the selection rule. Every entry satisfies residual <= tol.
  std::vector<Eigenpair> eigenpairs;
  std::vector<IterationLog> log;
  Index restarts = 0;
  Index iterations = 0;
  Termination termination = Termination::BudgetExhausted;
  /// Factorizations of R(shift) performed (cache misses).
  long factorizations = 0;
};

/// Starting vector for the given config: random complex (seeded), collinear
/// blocks [x; ...; x; y], or the config's vector.
BlockVector make_start(const RationalEigenproblem& rep, const SolveConfig& config);

/// Restarted compact rational Krylov eigensolver. Breakdown and pole errors
/// propagate; running out of iterations or restarts is reported through
/// termination with the pairs converged so far.
SolveResult solve(const ProblemPtr& rep, const SolveConfig& config);

MemoryCounts memory_report(const CompactState& state);

const char* to_string(Termination t);

}  // namespace rcork
