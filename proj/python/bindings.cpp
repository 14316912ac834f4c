#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rcork/driver.hpp"
#include "rcork/errors.hpp"
#include "rcork/manifest.hpp"
#include "rcork/problems.hpp"
#include "rcork/rep_model.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace rcork;

namespace {

// Python-side handle; the problem is immutable, so sharing is safe.
struct Problem {
  ProblemPtr ptr;
};

Problem make_problem(std::vector<SpMat> coeffs, std::optional<SpMat> E, std::optional<SpMat> F,
                     std::optional<SpMat> C, std::optional<SpMat> D) {
  if (!E && !F && !C && !D) {
    return {std::make_shared<const RationalEigenproblem>(RationalEigenproblem::polynomial(std::move(coeffs)))};
  }
  if (!E || !F || !C || !D) {
    throw ConfigError("E, F, C and D must be given together");
  }
  return {std::make_shared<const RationalEigenproblem>(std::move(coeffs), std::move(*E), std::move(*F),
                                                       std::move(*C), std::move(*D))};
}

py::dict generated(const GeneratedProblem& g) {
  return py::dict("problem"_a = Problem{g.problem}, "prescribed"_a = g.prescribed, "shifts"_a = g.shifts);
}

SelectionRule rule_from(const std::string& which, Complex target) {
  SelectionRule rule;
  rule.target = target;
  if (which == "closest") {
    rule.kind = Selection::ClosestToTarget;
  } else if (which == "negimag") {
    rule.kind = Selection::LargestNegativeImag;
  } else {
    throw ConfigError("which must be 'closest' or 'negimag', got '" + which + "'");
  }
  return rule;
}

py::dict run_solve(const Problem& problem, Index nev, std::vector<Complex> shifts, Index m, Index p, double tol,
                   const std::string& which, Complex target, Index max_restarts, Index max_iterations,
                   std::uint64_t seed) {
  SolveConfig c;
  c.nev = nev;
  c.shifts = shifts.size() == 1 ? ShiftSchedule::fixed(shifts.front()) : ShiftSchedule::cyclic(std::move(shifts));
  c.m = m;
  c.p = p;
  c.tol = tol;
  c.selection = rule_from(which, target);
  c.max_restarts = max_restarts;
  c.max_iterations = max_iterations;
  c.seed = seed;
  SolveResult r;
  {
    py::gil_scoped_release release;
    r = solve(problem.ptr, c);
  }
  std::vector<Complex> values;
  std::vector<double> residuals;
  CMatrix vectors(problem.ptr->n(), static_cast<Index>(r.eigenpairs.size()));
  for (std::size_t i = 0; i < r.eigenpairs.size(); ++i) {
    values.push_back(r.eigenpairs[i].value);
    residuals.push_back(r.eigenpairs[i].residual);
    vectors.col(static_cast<Index>(i)) = r.eigenpairs[i].x;
  }
  py::list log;
  for (const auto& e : r.log) {
    log.append(py::dict("iteration"_a = e.iteration, "j"_a = e.j, "rank"_a = e.rank, "converged"_a = e.converged,
                        "max_residual"_a = e.max_residual, "compact_memory"_a = e.compact_memory,
                        "classical_memory"_a = e.classical_memory));
  }
  return py::dict("values"_a = values, "vectors"_a = vectors, "residuals"_a = residuals,
                  "iterations"_a = r.iterations, "restarts"_a = r.restarts,
                  "termination"_a = std::string(to_string(r.termination)), "factorizations"_a = r.factorizations,
                  "log"_a = log);
}

}  // namespace

PYBIND11_MODULE(_rcork, m) {
  m.doc() = "Compact rational Krylov eigensolver for R(lambda) = P(lambda) - E (C - lambda D)^{-1} F^T";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<PoleError>(m, "PoleError", base.ptr());
  py::register_exception<BreakdownError>(m, "BreakdownError", base.ptr());

  py::class_<Problem>(m, "Problem")
      .def(py::init(&make_problem), "coeffs"_a, "E"_a = py::none(), "F"_a = py::none(), "C"_a = py::none(),
           "D"_a = py::none(), "Sparse coefficients P_0..P_d and optional state-space factors E, F, C, D.")
      .def_property_readonly("n", [](const Problem& p) { return p.ptr->n(); })
      .def_property_readonly("s", [](const Problem& p) { return p.ptr->s(); })
      .def_property_readonly("degree", [](const Problem& p) { return p.ptr->degree(); })
      .def("evaluate", [](const Problem& p, Complex lambda) { return evaluate(*p.ptr, lambda); }, "lam"_a)
      .def("apply", [](const Problem& p, Complex lambda, const CVector& x) { return apply_rational(*p.ptr, lambda, x); },
           "lam"_a, "x"_a)
      .def("relative_residual",
           [](const Problem& p, Complex lambda, const CVector& x) { return relative_residual(*p.ptr, lambda, x); },
           "lam"_a, "x"_a)
      .def("proper_norm_fro", [](const Problem& p, Complex lambda) { return proper_norm_fro(*p.ptr, lambda); },
           "lam"_a);

  m.def("gen_exp1", [](Index n, std::uint64_t seed, Index k_eigs) { return generated(gen_exp1(n, seed, k_eigs)); },
        "n"_a, "seed"_a = 1, "k_eigs"_a = 10, "Quadratic test problem with one rational term.");
  m.def("gen_exp2", [](Index n, std::uint64_t seed, Index k_eigs) { return generated(gen_exp2(n, seed, k_eigs)); },
        "n"_a, "seed"_a = 1, "k_eigs"_a = 10, "Cubic test problem with a rank-two rational term.");

  m.def(
      "load_problem",
      [](const std::string& path) {
        const LoadedProblem p = load_problem(path);
        return py::make_tuple(Problem{p.problem}, p.prescribed);
      },
      "manifest"_a);
  m.def(
      "export_problem",
      [](const Problem& p, const std::vector<Complex>& prescribed, const std::string& dir) {
        return export_problem(*p.ptr, prescribed, dir);
      },
      "problem"_a, "prescribed"_a, "directory"_a);

  m.def("solve", &run_solve, "problem"_a, "nev"_a = 6, "shifts"_a = std::vector<Complex>{Complex(0.0)},
        "m"_a = 30, "p"_a = 20, "tol"_a = 1e-10, "which"_a = "closest", "target"_a = Complex(0.0),
        "max_restarts"_a = 10, "max_iterations"_a = 1000, "seed"_a = 1,
        "Restarted compact rational Krylov solve; returns a dict of values, vectors, residuals and the log.");

  m.def(
      "memory_counts",
      [](Index n, Index d, Index s, Index r, Index k) {
        const MemoryCounts c = memory_counts(n, d, s, r, k);
        return py::make_tuple(c.compact, c.classical);
      },
      "n"_a, "d"_a, "s"_a, "r"_a, "k"_a, "Stored complex numbers (compact, classical) for k basis columns of rank r.");
}
