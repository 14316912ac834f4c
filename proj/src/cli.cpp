#include "rcork/cli.hpp"

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "rcork/dense_eig.hpp"
#include "rcork/driver.hpp"
#include "rcork/errors.hpp"
#include "rcork/io_util.hpp"
#include "rcork/krylov_classic.hpp"
#include "rcork/manifest.hpp"
#include "rcork/problems.hpp"
#include "rcork/rcork_core.hpp"

namespace rcork {

Complex parse_complex(const std::string& text) {
  std::string s;
  for (const char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s.push_back(c);
    }
  }
  auto number = [&](const std::string& part, double fallback) {
    if (part.empty() || part == "+") {
      return fallback;
    }
    if (part == "-") {
      return -fallback;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw ConfigError("malformed complex number '" + text + "'");
    }
    if (used != part.size()) {
      throw ConfigError("malformed complex number '" + text + "'");
    }
    return v;
  };
  if (s.empty()) {
    throw ConfigError("empty complex number");
  }
  if (s.back() != 'i' && s.back() != 'j') {
    return {number(s, 0.0), 0.0};
  }
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    return {0.0, number(s, 1.0)};
  }
  return {number(s.substr(0, split), 0.0), number(s.substr(split), 1.0)};
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_complex(item));
  }
  if (out.empty()) {
    throw ConfigError("empty shift list");
  }
  return out;
}

namespace {

struct SolveOptions {
  std::string manifest;
  Index nev = 6;
  std::string shifts;
  std::string fixed_shift;
  Index max_dim = 30;
  Index keep = 20;
  double tol = 1e-10;
  double cheap_tol = 1e-3;
  Index stride = 5;
  Index max_restarts = 10;
  Index max_iterations = 1000;
  std::uint64_t seed = 1;
  std::string out = ".";
  bool baseline = false;
  std::string which = "closest";
  std::string target = "0";
};

struct GenOptions {
  std::string experiment = "exp1";
  Index n = 2000;
  Index k_eigs = 10;
  std::uint64_t seed = 1;
  std::string out = ".";
};

template <typename... Args>
std::string fmt(const char* format, Args... args) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

void run_baseline(const ProblemPtr& rep, const SolveConfig& config, Index steps, std::ostream& out) {
  LinearizationPencil pencil(rep);
  if (pencil.size() > dense_cap()) {
    out << "baseline: skipped, pencil size " << pencil.size() << " exceeds dense cap " << dense_cap() << "\n";
    return;
  }
  const BlockVector u0 = make_start(*rep, config);
  ShiftContextCache cache(rep);
  CompactState compact = rcork_init(u0);
  DensePencil dense(pencil.assemble_A(), pencil.assemble_B());
  KrylovState classic = rk_init(u0.data());
  for (Index k = 0; k < steps; ++k) {
    const Complex theta = config.shifts.at(k);
    rcork_step(cache, compact, theta);
    rk_step(dense, classic, theta);
  }
  const double dh = (compact.H - classic.H).cwiseAbs().maxCoeff();
  const double dk = (compact.K - classic.K).cwiseAbs().maxCoeff();
  const MemoryCounts mem = memory_report(compact);
  out << "baseline: " << steps << " classical rational Krylov steps on the dense pencil\n";
  out << fmt("baseline: max |H - H_classical| = %.3e, max |K - K_classical| = %.3e, memory ratio %.3f\n", dh, dk,
             static_cast<double>(mem.classical) / static_cast<double>(mem.compact));
}

int cmd_solve(const SolveOptions& o, std::ostream& out) {
  const LoadedProblem loaded = load_problem(o.manifest);
  SolveConfig config;
  config.nev = o.nev;
  config.m = o.max_dim;
  config.p = o.keep;
  config.tol = o.tol;
  config.cheap_tol = o.cheap_tol;
  config.stride = o.stride;
  config.max_restarts = o.max_restarts;
  config.max_iterations = o.max_iterations;
  config.seed = o.seed;
  config.selection.target = parse_complex(o.target);
  if (o.which == "closest") {
    config.selection.kind = Selection::ClosestToTarget;
  } else if (o.which == "negimag") {
    config.selection.kind = Selection::LargestNegativeImag;
  } else {
    throw ConfigError("unknown selection '" + o.which + "' (expected closest or negimag)");
  }
  if (!o.fixed_shift.empty()) {
    config.shifts = ShiftSchedule::fixed(parse_complex(o.fixed_shift));
  } else if (!o.shifts.empty()) {
    const auto list = parse_complex_list(o.shifts);
    config.shifts = list.size() == 1 ? ShiftSchedule::fixed(list[0]) : ShiftSchedule::cyclic(list);
  } else {
    config.shifts = ShiftSchedule::fixed(config.selection.target);
  }
  config.validate();

  const SolveResult result = solve(loaded.problem, config);

  std::filesystem::create_directories(o.out);
  const std::filesystem::path dir(o.out);
  std::ostringstream res;
  for (const auto& pair : result.eigenpairs) {
    res << fmt("%.17g %.17g %.6e\n", pair.value.real(), pair.value.imag(), pair.residual);
  }
  write_file_atomic((dir / "results.txt").string(), res.str());

  std::ostringstream csv;
  csv << "iter,j,r_j,n_converged,max_residual,rcork_mem,classical_mem\n";
  for (const auto& e : result.log) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6e", e.max_residual);
    csv << e.iteration << ',' << e.j << ',' << e.rank << ',' << e.converged << ',' << buf << ','
        << e.compact_memory << ',' << e.classical_memory << '\n';
  }
  write_file_atomic((dir / "convergence.csv").string(), csv.str());

  out << "status: " << to_string(result.termination) << "\n";
  out << "converged: " << result.eigenpairs.size() << " of " << config.nev << "\n";
  out << "iterations: " << result.iterations << ", restarts: " << result.restarts
      << ", factorizations: " << result.factorizations << "\n";
  if (o.baseline) {
    run_baseline(loaded.problem, config, std::min(result.iterations, config.m - 1), out);
  }
  return result.termination == Termination::Converged ? 0 : 2;
}

int cmd_gen(const GenOptions& o, std::ostream& out) {
  GeneratedProblem g;
  if (o.experiment == "exp1") {
    g = gen_exp1(o.n, o.seed, o.k_eigs);
  } else if (o.experiment == "exp2") {
    g = gen_exp2(o.n, o.seed, o.k_eigs);
  } else {
    throw ConfigError("unknown experiment '" + o.experiment + "' (expected exp1 or exp2)");
  }
  const std::string path = export_problem(*g.problem, g.prescribed, o.out);
  out << "wrote " << path << "\n";
  return 0;
}

int cmd_check(const std::string& manifest, std::ostream& out) {
  const LoadedProblem loaded = load_problem(manifest);
  const RationalEigenproblem& rep = *loaded.problem;
  bool ok = true;
  auto report = [&](bool pass, const std::string& what) {
    out << (pass ? "ok   " : "FAIL ") << what << "\n";
    ok = ok && pass;
  };
  report(true, "loaded: n = " + std::to_string(rep.n()) + ", d = " + std::to_string(rep.degree()) +
                   ", s = " + std::to_string(rep.s()));
  try {
    const LeadingCoefficientReport lead = check_leading_coefficient(rep);
    out << (lead.ill_conditioned ? "warn " : "ok   ") << "leading coefficient rcond estimate "
        << lead.rcond_estimate << "\n";
  } catch (const SingularMatrixError& e) {
    report(false, e.what());
  }

  LinearizationPencil pencil(loaded.problem);
  SolveConfig config;
  const BlockVector u0 = make_start(rep, config);
  ShiftContextCache cache(loaded.problem);
  CompactState state = rcork_init(u0);
  const Complex theta = loaded.prescribed.empty() ? Complex(0.3, 0.1) : loaded.prescribed.front() * 1.01;
  const Index steps = std::min<Index>(10, pencil.size() - 1);
  try {
    for (Index k = 0; k < steps; ++k) {
      rcork_step(cache, state, theta);
    }
    const double qo = q_orthogonality(state.basis);
    const double ro = r_orthogonality(state.basis);
    const double rr = recurrence_residual(pencil, state);
    report(qo <= 1e-12, fmt("Q orthonormality %.3e", qo));
    report(ro <= 1e-12, fmt("stacked R orthonormality %.3e", ro));
    report(rr <= 1e-11, fmt("recurrence residual %.3e", rr));
    report(state.basis.rank() < rep.degree() + state.basis.columns(), "rank bound r < d + j");
  } catch (const Error& e) {
    report(false, std::string("compact iteration: ") + e.what());
  }

  if (!loaded.prescribed.empty()) {
    if (pencil.size() <= dense_cap()) {
      const GeneralizedEigs eig = generalized_eig(pencil.assemble_A(), pencil.assemble_B(), false);
      double worst = 0.0;
      for (const Complex& lam : loaded.prescribed) {
        double best = std::numeric_limits<double>::infinity();
        for (Index i = 0; i < eig.alpha.size(); ++i) {
          if (std::abs(eig.beta(i)) > 0.0) {
            best = std::min(best, std::abs(eig.alpha(i) / eig.beta(i) - lam) / std::max(1.0, std::abs(lam)));
          }
        }
        worst = std::max(worst, best);
      }
      report(worst <= 1e-8, fmt("prescribed eigenvalues match the dense pencil to %.3e", worst));
    } else {
      out << "skip prescribed eigenvalue check, pencil size exceeds dense cap\n";
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compact rational Krylov eigensolver for rational eigenvalue problems", "rcork"};
  app.require_subcommand(1);

  SolveOptions so;
  auto* solve_cmd = app.add_subcommand("solve", "Compute eigenpairs of a problem given by a manifest");
  solve_cmd->add_option("--manifest", so.manifest, "Problem manifest")->required();
  solve_cmd->add_option("--nev", so.nev, "Number of wanted eigenpairs");
  solve_cmd->add_option("--shifts", so.shifts, "Comma-separated shifts, cycled per iteration");
  solve_cmd->add_option("--fixed-shift", so.fixed_shift, "Single fixed shift");
  solve_cmd->add_option("--max-dim", so.max_dim, "Maximum subspace dimension m");
  solve_cmd->add_option("--keep", so.keep, "Dimension p kept by a restart");
  solve_cmd->add_option("--tol", so.tol, "Tolerance on the relative residual");
  solve_cmd->add_option("--cheap-tol", so.cheap_tol, "Tolerance on the cheap residual estimate");
  solve_cmd->add_option("--stride", so.stride, "Full residual check stride");
  solve_cmd->add_option("--max-restarts", so.max_restarts, "Maximum number of restarts");
  solve_cmd->add_option("--max-iterations", so.max_iterations, "Maximum number of iterations");
  solve_cmd->add_option("--seed", so.seed, "Seed of the random start vector");
  solve_cmd->add_option("--out", so.out, "Output directory");
  solve_cmd->add_option("--which", so.which, "Selection: closest (to --target) or negimag");
  solve_cmd->add_option("--target", so.target, "Target for closest selection");
  solve_cmd->add_flag("--baseline-rk", so.baseline, "Also run classical rational Krylov when small");

  GenOptions go;
  auto* gen_cmd = app.add_subcommand("gen", "Export a generated test problem");
  gen_cmd->add_option("--experiment", go.experiment, "exp1 or exp2");
  gen_cmd->add_option("--n", go.n, "Problem size");
  gen_cmd->add_option("--k-eigs", go.k_eigs, "Number of prescribed eigenvalues");
  gen_cmd->add_option("--seed", go.seed, "Random seed");
  gen_cmd->add_option("--out", go.out, "Output directory");

  std::string check_manifest;
  auto* check_cmd = app.add_subcommand("check", "Validate a manifest and run invariant checks");
  check_cmd->add_option("--manifest", check_manifest, "Problem manifest")->required();

  std::vector<std::string> argv_store;
  argv_store.emplace_back("rcork");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) {
    argv.push_back(a.data());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve_cmd) {
      return cmd_solve(so, out);
    }
    if (*gen_cmd) {
      return cmd_gen(go, out);
    }
    if (*check_cmd) {
      return cmd_check(check_manifest, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace rcork
