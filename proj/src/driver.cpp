#include "rcork/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "rcork/errors.hpp"

namespace rcork {

Complex ShiftSchedule::at(Index iteration) const {
  switch (kind) {
    case Kind::Fixed:
      return shifts.at(0);
    case Kind::Cyclic:
      return shifts.at(static_cast<std::size_t>(iteration) % shifts.size());
    case Kind::Callback:
      return callback(iteration);
  }
  return shifts.at(0);
}

void SolveConfig::validate() const {
  if (nev < 0) {
    throw ConfigError("nev must be non-negative");
  }
  if (!(tol > 0.0)) {
    throw ConfigError("tol must be positive");
  }
  if (!(cheap_tol > 0.0)) {
    throw ConfigError("cheap_tol must be positive");
  }
  if (nev > 0 && !(nev <= p && p < m)) {
    throw ConfigError("need nev <= p < m, got nev = " + std::to_string(nev) + ", p = " + std::to_string(p) +
                      ", m = " + std::to_string(m));
  }
  if (stride < 1) {
    throw ConfigError("stride must be at least 1");
  }
  if (max_restarts < 0 || max_iterations < 0) {
    throw ConfigError("budgets must be non-negative");
  }
  if ((shifts.kind == ShiftSchedule::Kind::Fixed || shifts.kind == ShiftSchedule::Kind::Cyclic) &&
      shifts.shifts.empty()) {
    throw ConfigError("shift schedule is empty");
  }
  if (shifts.kind == ShiftSchedule::Kind::Callback && !shifts.callback) {
    throw ConfigError("shift schedule callback is not set");
  }
  if (selection.kind == Selection::Custom && !selection.score) {
    throw ConfigError("custom selection requires a scoring function");
  }
  if (start == StartKind::Given && !start_vector) {
    throw ConfigError("start kind Given requires a start vector");
  }
}

BlockVector make_start(const RationalEigenproblem& rep, const SolveConfig& config) {
  const Index n = rep.n();
  const Index d = rep.degree();
  const Index s = rep.s();
  if (config.start == StartKind::Given) {
    if (!config.start_vector || !config.start_vector->conformal(n, d, s)) {
      throw DimensionError("start vector does not match the problem layout");
    }
    BlockVector u = *config.start_vector;
    const double nrm = u.norm();
    if (!(nrm > 0.0)) {
      throw ZeroVectorError("start vector is zero");
    }
    u.data() /= nrm;
    return u;
  }
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> g(0.0, 1.0);
  auto draw = [&](Index len) {
    CVector v(len);
    for (Index i = 0; i < len; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      v(i) = Complex(re, im);
    }
    return v;
  };
  BlockVector u(n, d, s);
  if (config.start == StartKind::Collinear) {
    const CVector x = draw(n);
    for (Index i = 0; i < d; ++i) {
      u.block(i) = x;
    }
    u.tail() = draw(s);
  } else {
    u.data() = draw(n * d + s);
  }
  u.data() /= u.norm();
  return u;
}

MemoryCounts memory_report(const CompactState& state) {
  const CompactBasis& b = state.basis;
  return memory_counts(b.n, b.d, b.s, b.rank(), b.columns());
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Converged:
      return "converged";
    case Termination::BudgetExhausted:
      return "budget-exhausted";
  }
  return "unknown";
}

namespace {

struct Candidate {
  Index ritz_index;
  Complex value;
  double cheap;
};

}  // namespace

SolveResult solve(const ProblemPtr& rep, const SolveConfig& config) {
  config.validate();
  SolveResult result;
  if (config.nev == 0) {
    result.termination = Termination::Converged;
    return result;
  }

  ShiftContextCache cache(rep);
  CompactState state = rcork_init(make_start(*rep, config));

  std::vector<Eigenpair> converged;
  double last_max = std::numeric_limits<double>::quiet_NaN();
  Index iteration = 0;

  // Evaluates the wanted Ritz pairs whose cheap estimate is small enough and
  // records the ones meeting the tolerance.
  auto check = [&](const std::vector<RitzPair>& ritz, const std::vector<Index>& wanted) {
    std::vector<Eigenpair> found;
    double worst = std::numeric_limits<double>::quiet_NaN();
    for (const Index idx : wanted) {
      const RitzPair& pair = ritz[static_cast<std::size_t>(idx)];
      if (!(pair.cheap_residual <= config.cheap_tol)) {
        continue;
      }
      try {
        BlockVector z = ritz_vector(state, pair);
        CVector x = recover_eigenvector(z, pair.value);
        const double e = relative_residual(*rep, pair.value, x);
        worst = std::isnan(worst) ? e : std::max(worst, e);
        if (e <= config.tol) {
          found.push_back({pair.value, std::move(x), e, std::move(z)});
        }
      } catch (const PoleError&) {
      } catch (const ZeroVectorError&) {
      }
    }
    converged = std::move(found);
    last_max = worst;
  };

  auto wanted_pairs = [&](const std::vector<RitzPair>& ritz) {
    std::vector<Complex> values;
    values.reserve(ritz.size());
    for (const auto& r : ritz) {
      values.push_back(r.value);
    }
    // Previously converged values are matched to their nearest Ritz values
    // and kept ahead of the rest.
    std::vector<Index> forced;
    std::vector<bool> used(values.size(), false);
    for (const auto& c : converged) {
      Index best = -1;
      double dist = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < values.size(); ++i) {
        const double dd = std::abs(values[i] - c.value);
        if (!used[i] && dd < dist) {
          dist = dd;
          best = static_cast<Index>(i);
        }
      }
      if (best >= 0) {
        used[static_cast<std::size_t>(best)] = true;
        forced.push_back(best);
      }
    }
    std::vector<Index> order = order_by_rule(values, config.selection, forced);
    if (static_cast<Index>(order.size()) > config.nev) {
      order.resize(static_cast<std::size_t>(config.nev));
    }
    return order;
  };

  while (true) {
    if (iteration >= config.max_iterations) {
      result.termination = Termination::BudgetExhausted;
      break;
    }
    rcork_step(cache, state, config.shifts.at(iteration));
    ++iteration;
    const Index j = state.steps();

    const std::vector<RitzPair> ritz = ritz_pairs(state.H, state.K);
    const std::vector<Index> wanted = wanted_pairs(ritz);
    const bool at_limit = j >= config.m;
    const bool last = iteration >= config.max_iterations;
    if (iteration % config.stride == 0 || at_limit || last) {
      check(ritz, wanted);
    }

    const MemoryCounts mem = memory_report(state);
    result.log.push_back({iteration, j, state.basis.rank(), static_cast<Index>(converged.size()), last_max,
                          mem.compact, mem.classical});

    if (static_cast<Index>(converged.size()) >= config.nev) {
      result.termination = Termination::Converged;
      break;
    }
    if (at_limit) {
      if (!config.restart || result.restarts >= config.max_restarts) {
        result.termination = Termination::BudgetExhausted;
        break;
      }
      std::vector<Complex> keep;
      for (const auto& c : converged) {
        keep.push_back(c.value);
      }
      restart(state, config.p, config.selection, keep);
      ++result.restarts;
    }
  }

  std::vector<Complex> values;
  for (const auto& c : converged) {
    values.push_back(c.value);
  }
  for (const Index i : order_by_rule(values, config.selection)) {
    result.eigenpairs.push_back(std::move(converged[static_cast<std::size_t>(i)]));
  }
  result.iterations = iteration;
  result.factorizations = cache.factorizations();
  return result;
}

}  // namespace rcork
