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
#include <optional>
#include <vector>

#include "ttk/solvers.hpp"

namespace ttk {

/// Coefficients of 1/z ~ sum_j alpha_j exp(-beta_j z) on [lambda_min, lambda_max].
struct ExpSum {
  std::vector<double> alpha;
  std::vector<double> beta;
  /// max |z E(z) - 1| over 1000 log-spaced sample points.
  double max_rel_error = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;

  Index terms() const { return static_cast<Index>(alpha.size()); }
  double operator()(double z) const;
};

ExpSum expsum_coeffs(double lambda_min, double lambda_max, Index zeta);

/// max |z E(z) - 1| over `samples` log-spaced z in [lo, hi].
double expsum_error(const ExpSum& e, double lo, double hi, Index samples = 1000);

Matrix matrix_exp(const Matrix& m);

struct SpectralInterval {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Bounds for the symmetric part of the Kronecker sum of `factors`.
SpectralInterval spectral_interval(const std::vector<Matrix>& factors);

enum class Accumulation { kSequential, kStta };

struct ExpSumOptions {
  RoundSpec round{1e-8, std::nullopt};
  Accumulation accumulation = Accumulation::kStta;
  /// Recovery rank of the accumulation frame; 0 uses round.max_rank or kUncappedFrameRank.
  Index frame_rank = 0;
  Index oversampling = kDefaultOversampling;
  std::uint64_t seed = 0;

  static constexpr Index kUncappedFrameRank = 192;
};

/// P^{-1} = sum_j alpha_j (x)_i exp(-beta_j A_i).
class ExpSumPreconditioner final : public Preconditioner {
 public:
  ExpSumPreconditioner(std::vector<Matrix> factors, std::vector<double> alpha,
                       std::vector<double> beta, ExpSumOptions options = {});

  /// Coefficients fitted on spectral_interval(factors).
  static ExpSumPreconditioner build(std::vector<Matrix> factors, Index zeta,
                                    ExpSumOptions options = {});

  TTVector apply_inverse(const TTVector& v) const override;

  /// Sum of all terms without any rounding; ranks are zeta times those of v.
  TTVector apply_exact(const TTVector& v) const;

  Index terms() const { return static_cast<Index>(alpha_.size()); }
  Dims dims() const;
  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<double>& beta() const { return beta_; }
  const ExpSumOptions& options() const { return options_; }
  void set_round(const RoundSpec& spec) { options_.round = spec; }
  /// Fit error reported by build(); zero for explicit coefficients.
  double fit_error() const { return fit_error_; }
  const SpectralInterval& interval() const { return interval_; }

 private:
  TTVector term(const TTVector& v, Index j) const;
  const StreamFrame& frame(Index rank) const;

  std::vector<Matrix> factors_;
  std::vector<double> alpha_;
  std::vector<double> beta_;
  std::vector<std::vector<Matrix>> exps_;  // exps_[j][i] = exp(-beta_j A_i)
  ExpSumOptions options_;
  double fit_error_ = 0.0;
  SpectralInterval interval_;
  mutable std::optional<StreamFrame> frame_;
  mutable Index frame_rank_ = 0;
};

}  // namespace ttk
