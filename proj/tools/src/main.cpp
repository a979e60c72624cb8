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

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "config.hpp"
#include "runner.hpp"

namespace fs = std::filesystem;
using namespace ttk;
using namespace ttk::cli;

namespace {

constexpr int kConverged = 0;
constexpr int kUsageError = 1;
constexpr int kNotConverged = 2;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  bool track_true_residual = false;
  std::optional<Index> maxit;
  std::optional<double> tol;
  int jobs = 1;
};

ExperimentConfig load(const std::string& path, const Overrides& o) {
  ExperimentConfig cfg = load_config(path);
  if (o.seed) {
    cfg.seed = *o.seed;
    cfg.markov.seed = *o.seed;
  }
  if (o.track_true_residual) cfg.track_true_residual = true;
  if (o.maxit) cfg.solver.maxit = *o.maxit;
  if (o.tol) cfg.solver.tol = *o.tol;
  return cfg;
}

fs::path under(const Overrides& o, const fs::path& p) {
  return p.is_absolute() ? p : fs::path(o.out_dir) / p;
}

std::string summary_row(const RunSummary& s) {
  std::ostringstream os;
  os.precision(17);
  os << s.variant << ',' << s.iterations << ',' << (s.converged ? "true" : "false") << ','
     << s.wall_time << ',' << s.peak_rank << ',' << s.res_sketched << ',';
  if (s.res_true) os << *s.res_true;
  return os.str();
}

int cmd_solve(const std::string& path, const Overrides& o) {
  const ExperimentConfig cfg = load(path, o);
  if (cfg.variants.size() != 1) throw ConfigError("solver.variants: solve runs exactly one solver");
  const Problem p = build_problem(cfg);
  const RunSummary s = run_variant(cfg, p, cfg.variants.front(), under(o, cfg.csv));
  std::cout << format_summary(s) << '\n';
  return s.converged ? kConverged : kNotConverged;
}

int cmd_compare(const std::string& path, const Overrides& o) {
  const ExperimentConfig cfg = load(path, o);
  const Problem p = build_problem(cfg);
  std::vector<RunSummary> rows;
  for (SolverKind v : cfg.variants) {
    rows.push_back(run_variant(cfg, p, v, under(o, solver_name(v) + ".csv")));
    std::cout << format_summary(rows.back()) << '\n';
  }
  std::ofstream os(under(o, "summary.csv"));
  os << "variant,iterations,converged,time,peak_rank,res_sketched,res_true\n";
  bool all = true;
  for (const auto& r : rows) {
    os << summary_row(r) << '\n';
    all = all && r.converged;
  }
  return all ? kConverged : kNotConverged;
}

ExperimentConfig at_point(ExperimentConfig cfg, const std::string& axis, const std::string& value) {
  const std::string key = "sweep.values";
  if (axis == "max_rank") {
    std::optional<Index> cap;
    if (value != "none" && value != "inf") {
      cap = std::stol(value);
      if (*cap < 1) throw ConfigError(key + ": ranks must be positive");
    }
    cfg.solver.max_rank = cap;
    cfg.precond.max_rank = cap;
    return cfg;
  }
  Index v = 0;
  try {
    v = std::stol(value);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  if (axis == "d") {
    cfg.pde.d = v;
    cfg.markov.d = v;
    if (!cfg.pde.convection.empty()) cfg.pde.convection.assign(v, cfg.pde.convection.front());
  } else {
    cfg.pde.n = v;
    cfg.markov.n = v;
  }
  return cfg;
}

struct SweepPoint {
  std::string value;
  SolverKind variant;
  fs::path trace;
  fs::path row;
};

void run_point(const ExperimentConfig& base, const std::string& axis, const SweepPoint& pt) {
  const ExperimentConfig cfg = at_point(base, axis, pt.value);
  const Problem p = build_problem(cfg);
  const RunSummary s = run_variant(cfg, p, pt.variant, pt.trace);
  std::ofstream(pt.row) << axis << ',' << pt.value << ',' << summary_row(s) << '\n';
  std::cout << axis << '=' << pt.value << ' ' << format_summary(s) << std::endl;
}

int cmd_sweep(const std::string& path, const Overrides& o) {
  const ExperimentConfig cfg = load(path, o);
  if (cfg.sweep.axis.empty()) throw ConfigError("sweep.axis: missing");
  if (cfg.sweep.values.empty()) throw ConfigError("sweep.values: empty sweep list");
  for (const auto& v : cfg.sweep.values) at_point(cfg, cfg.sweep.axis, v);

  std::vector<SweepPoint> points;
  for (const auto& value : cfg.sweep.values) {
    for (SolverKind v : cfg.variants) {
      const std::string stem = cfg.sweep.axis + "_" + value + "_" + solver_name(v);
      points.push_back({value, v, under(o, stem + ".csv"), under(o, stem + ".row")});
    }
  }
  fs::create_directories(o.out_dir);

  if (o.jobs <= 1) {
    for (const auto& pt : points) run_point(cfg, cfg.sweep.axis, pt);
  } else {
    std::size_t next = 0;
    int running = 0;
    bool failed = false;
    auto reap = [&] {
      int status = 0;
      ::wait(&status);
      --running;
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) failed = true;
    };
    while (next < points.size()) {
      if (running >= o.jobs) reap();
      const pid_t pid = ::fork();
      if (pid < 0) throw std::runtime_error("fork failed");
      if (pid == 0) {
        int code = 0;
        try {
          run_point(cfg, cfg.sweep.axis, points[next]);
        } catch (const std::exception& e) {
          std::cerr << "ttk: " << e.what() << '\n';
          code = 1;
        }
        std::_Exit(code);
      }
      ++running;
      ++next;
    }
    while (running > 0) reap();
    if (failed) throw std::runtime_error("a sweep point failed");
  }

  std::ofstream os(under(o, "sweep.csv"));
  os << "axis,value,variant,iterations,converged,time,peak_rank,res_sketched,res_true\n";
  bool all = true;
  for (const auto& pt : points) {
    std::ifstream is(pt.row);
    std::string line;
    std::getline(is, line);
    os << line << '\n';
    all = all && line.find(",true,") != std::string::npos;
    is.close();
    fs::remove(pt.row);
  }
  return all ? kConverged : kNotConverged;
}

void apply_thread_cap() {
  const char* env = std::getenv("TTK_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw ConfigError("TTK_THREADS: expected a positive integer");
  Eigen::setNbThreads(static_cast<int>(n));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sketched tensor-train Krylov solvers"};
  app.require_subcommand(1);
  Overrides o;
  std::uint64_t seed = 0;
  Index maxit = 0;
  double tol = 0.0;
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed")->capture_default_str();
  app.add_option("--out-dir", o.out_dir, "Directory for CSV output")->capture_default_str();
  app.add_flag("--track-true-residual", o.track_true_residual, "Record true residuals");
  auto* maxit_opt = app.add_option("--maxit", maxit, "Iteration limit")->check(CLI::PositiveNumber);
  auto* tol_opt = app.add_option("--tol", tol, "Target relative residual")->check(CLI::Range(0.0, 1.0));
  app.add_option("--jobs", o.jobs, "Parallel sweep points")->check(CLI::PositiveNumber)->capture_default_str();

  std::string config;
  auto* solve = app.add_subcommand("solve", "Run one solver");
  auto* compare = app.add_subcommand("compare", "Run several solvers on one problem");
  auto* sweep = app.add_subcommand("sweep", "Sweep d, n or max_rank");
  for (auto* sub : {solve, compare, sweep}) {
    sub->add_option("config", config, "INI experiment config")->required()->check(CLI::ExistingFile);
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }
  if (*seed_opt) o.seed = seed;
  if (*maxit_opt) o.maxit = maxit;
  if (*tol_opt) o.tol = tol;

  try {
    apply_thread_cap();
    fs::create_directories(o.out_dir);
    if (*solve) return cmd_solve(config, o);
    if (*compare) return cmd_compare(config, o);
    return cmd_sweep(config, o);
  } catch (const ConfigError& e) {
    std::cerr << "ttk: config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "ttk: " << e.what() << '\n';
    return kUsageError;
  }
}
