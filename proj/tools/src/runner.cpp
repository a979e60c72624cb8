// Copyright 2026 The ttk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "runner.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace ttk::cli {
namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Problem build_problem(const ExperimentConfig& cfg) {
  try {
    return cfg.problem == ProblemKind::kMarkov ? markov_chain(cfg.markov)
                                               : convection_diffusion(cfg.pde);
  } catch (const std::logic_error& e) {
    throw ConfigError(std::string("problem: ") + e.what());
  }
}

void write_trace(std::ostream& os, const SolveReport& report) {
  os << kTraceHeader << '\n';
  Index k = 0;
  for (const auto& h : report.history) {
    os << ++k << ',' << num(h.res_sketched) << ',';
    if (h.res_true) os << num(*h.res_true);
    os << ',' << h.max_rank << ',' << num(h.times.matvec) << ',' << num(h.times.sketch) << ','
       << num(h.times.orth) << ',' << num(h.times.round) << ',' << num(h.times.lsq) << '\n';
  }
}

RunSummary run_variant(const ExperimentConfig& cfg, const Problem& problem, SolverKind kind,
                       const std::filesystem::path& csv) {
  SolverConfig sc = cfg.solver;
  sc.seed = cfg.seed;
  sc.track_true_residual = cfg.track_true_residual;
  const bool preconditioned = kind == SolverKind::kSpgmres;
  if (kind != SolverKind::kGmres) {
    sc.tol = cfg.sketched_tol.value_or((preconditioned ? 0.1 : 0.3) * cfg.solver.tol);
  }
  try {
    sc.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("solver: ") + e.what());
  }

  const TTVector x0 = TTVector::zeros(problem.b.dims());
  SolveResult result;
  switch (kind) {
    case SolverKind::kGmres:
      result = tt_gmres(problem.a, problem.b, x0, sc);
      break;
    case SolverKind::kSgmresVanilla:
      result = tt_sgmres_vanilla(problem.a, problem.b, x0, sc, make_sketch(sc, problem.b.dims()));
      break;
    case SolverKind::kSgmres:
      result = tt_sgmres(problem.a, problem.b, x0, sc, make_sketch(sc, problem.b.dims()),
                         make_frame(sc, problem.b));
      break;
    case SolverKind::kSpgmres: {
      ExpSumOptions opts;
      opts.round = RoundSpec{sc.eta * sc.tol, cfg.precond.max_rank ? cfg.precond.max_rank : sc.max_rank};
      opts.accumulation = cfg.precond.accumulation;
      opts.frame_rank = cfg.precond.frame_rank;
      opts.oversampling = sc.oversampling;
      opts.seed = cfg.seed;
      const ExpSumPreconditioner p =
          ExpSumPreconditioner::build(problem.precond_factors, cfg.precond.zeta, opts);
      result = tt_spgmres(problem.a, p, problem.b, x0, sc, make_sketch(sc, problem.b.dims()),
                          make_frame(sc, problem.b));
      break;
    }
  }

  if (!csv.empty()) {
    if (csv.has_parent_path()) std::filesystem::create_directories(csv.parent_path());
    std::ofstream os(csv);
    if (!os) throw std::runtime_error("cannot write " + csv.string());
    write_trace(os, result.report);
  }

  RunSummary s;
  s.variant = solver_name(kind);
  s.converged = result.report.converged;
  s.iterations = result.report.iterations;
  s.res_sketched = result.report.final_sketched();
  if (cfg.track_true_residual) s.res_true = true_residual(problem.a, problem.b, result.x);
  s.peak_rank = result.report.peak_rank();
  s.wall_time = result.report.wall_time;
  return s;
}

std::string format_summary(const RunSummary& s) {
  char true_buf[32] = "untracked";
  if (s.res_true) std::snprintf(true_buf, sizeof true_buf, "%.3e", *s.res_true);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%s iterations=%ld converged=%s res_sketched=%.3e res_true=%s peak_rank=%ld "
                "wall_time=%.3fs",
                s.variant.c_str(), static_cast<long>(s.iterations), s.converged ? "true" : "false",
                s.res_sketched, true_buf,
                static_cast<long>(s.peak_rank), s.wall_time);
  return buf;
}

}  // namespace ttk::cli
