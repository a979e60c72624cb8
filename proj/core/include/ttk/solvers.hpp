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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ttk/sketch.hpp"
#include "ttk/stta.hpp"
#include "ttk/tt_operator.hpp"

namespace ttk {

/// How the incomplete orthogonalization update is formed.
enum class CombineMode { kExplicit, kStta };

/// Right preconditioner seen by the solvers through its inverse action.
class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  virtual TTVector apply_inverse(const TTVector& v) const = 0;
};

class IdentityPreconditioner final : public Preconditioner {
 public:
  TTVector apply_inverse(const TTVector& v) const override { return v; }
};

struct SolverConfig {
  Index maxit = 100;
  double tol = 1e-6;
  Index window = 1;
  double eta = 0.3;
  std::optional<Index> max_rank;
  /// 0 selects 2 * maxit.
  Index sketch_rows = 0;
  Index oversampling = kDefaultOversampling;
  /// Rank cap of the recovered solution; unset keeps everything above tol.
  std::optional<Index> solution_rank;
  /// Recovery ranks of the stream frame; empty derives them from solution_rank and b.
  std::vector<Index> frame_ranks;
  CombineMode combine_mode = CombineMode::kExplicit;
  std::uint64_t seed = 0;
  bool track_true_residual = false;
  /// Run all maxit iterations regardless of the stopping test.
  bool force_iterations = false;
  /// Called with the number of resident basis TT-vectors whenever it changes.
  std::function<void(Index)> audit;

  Index rows() const { return sketch_rows > 0 ? sketch_rows : default_sketch_rows(maxit); }
  void validate() const;
};

struct PhaseTimes {
  double matvec = 0.0;
  double sketch = 0.0;
  double orth = 0.0;
  double round = 0.0;
  double lsq = 0.0;

  PhaseTimes& operator+=(const PhaseTimes& o);
};

struct IterationRecord {
  double res_sketched = 0.0;
  std::optional<double> res_true;
  Index max_rank = 0;
  PhaseTimes times;
};

struct SolveReport {
  bool converged = false;
  Index iterations = 0;
  std::vector<IterationRecord> history;
  PhaseTimes totals;
  double recovery_time = 0.0;
  double wall_time = 0.0;
  Index peak_resident_basis = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;

  Index peak_rank() const;
  double final_sketched() const;
  std::optional<double> final_true() const;
};

struct SolveResult {
  TTVector x;
  SolveReport report;
};

struct LsqResult {
  Vector y;
  double residual = 0.0;
  /// Smallest retained over largest singular value.
  double conditioning = 1.0;
};

LsqResult sketched_lsq(const Matrix& w, const Vector& rhs);

/// ||b - A x|| / ||b|| with a single 1e-12 rounding of the residual.
double true_residual(const TTOperator& a, const TTVector& b, const TTVector& x);

/// Khatri-Rao sketch sized and seeded from the config.
KhatriRaoSketch make_sketch(const SolverConfig& cfg, const Dims& dims);

/// Stream frame sized and seeded from the config.
StreamFrame make_frame(const SolverConfig& cfg, const TTVector& b);

SolveResult tt_gmres(const TTOperator& a, const TTVector& b, const TTVector& x0,
                     const SolverConfig& cfg);

SolveResult tt_sgmres_vanilla(const TTOperator& a, const TTVector& b, const TTVector& x0,
                              const SolverConfig& cfg, const KhatriRaoSketch& s);

SolveResult tt_sgmres(const TTOperator& a, const TTVector& b, const TTVector& x0,
                      const SolverConfig& cfg, const KhatriRaoSketch& s,
                      const StreamFrame& frame);

SolveResult tt_spgmres(const TTOperator& a, const Preconditioner& p, const TTVector& b,
                       const TTVector& x0, const SolverConfig& cfg, const KhatriRaoSketch& s,
                       const StreamFrame& frame);

}  // namespace ttk
