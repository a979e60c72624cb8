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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"

namespace ttk::cli {

inline constexpr const char* kTraceHeader =
    "iter,res_sketched,res_true,max_rank,t_matvec,t_sketch,t_orth,t_round,t_lsq";

struct RunSummary {
  std::string variant;
  bool converged = false;
  Index iterations = 0;
  double res_sketched = 0.0;
  std::optional<double> res_true;
  Index peak_rank = 0;
  double wall_time = 0.0;
};

Problem build_problem(const ExperimentConfig& cfg);

/// Runs one variant and writes its trace to `csv`.
RunSummary run_variant(const ExperimentConfig& cfg, const Problem& problem, SolverKind kind,
                       const std::filesystem::path& csv);

void write_trace(std::ostream& os, const SolveReport& report);

std::string format_summary(const RunSummary& s);

}  // namespace ttk::cli
