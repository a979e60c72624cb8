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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ttk/ttk.hpp"

namespace ttk::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProblemKind { kConvectionDiffusion, kMarkov };

enum class SolverKind { kGmres, kSgmresVanilla, kSgmres, kSpgmres };

struct PreconditionerConfig {
  bool enabled = false;
  Index zeta = 17;
  std::optional<Index> max_rank;
  Accumulation accumulation = Accumulation::kStta;
  Index frame_rank = 0;
};

struct SweepConfig {
  std::string axis;
  /// Raw values; "none" is only meaningful on the max_rank axis.
  std::vector<std::string> values;
};

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::kConvectionDiffusion;
  ConvectionDiffusionSpec pde;
  MarkovSpec markov;

  std::vector<SolverKind> variants;
  SolverConfig solver;
  /// Unset means 0.3 * tol without a preconditioner and 0.1 * tol with one.
  std::optional<double> sketched_tol;

  PreconditionerConfig precond;
  SweepConfig sweep;

  std::string csv = "trace.csv";
  bool track_true_residual = false;
  std::uint64_t seed = 0;
};

ExperimentConfig load_config(const std::filesystem::path& path);

SolverKind parse_solver(const std::string& name);
std::string solver_name(SolverKind kind);

}  // namespace ttk::cli
