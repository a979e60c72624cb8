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
#include <span>
#include <vector>

#include "ttk/tt_vector.hpp"

namespace ttk {

/// Relative singular-value cutoff used when inverting the Omega sketches.
inline constexpr double kRecoveryRcond = 1e-12;

/// Default gap between left sketch ranks and recovery ranks.
inline constexpr Index kDefaultOversampling = 20;

/// Gaussian TT dimension-reduction map (random Gaussian TT tensor).
TTVector ttdrm_new(const Dims& dims, const std::vector<Index>& ranks, std::uint64_t seed);

/// A pair of TT-DRMs shared by every tensor streamed through it.
///
/// `right` (X) carries the recovery ranks r_1..r_{d-1}; `left` (Y) carries the
/// sketch ranks l_1..l_{d-1} with l > r wherever the unfolding allows it.
struct StreamFrame {
  TTVector right;
  TTVector left;

  Dims dims() const { return right.dims(); }
  std::vector<Index> recovery_ranks() const;
  std::vector<Index> left_ranks() const;
};

/// Largest meaningful rank of each interior unfolding, min(prod n_<=k, prod n_>k).
std::vector<Index> max_unfolding_ranks(const Dims& dims);

/// Frame with recovery ranks clamped to the unfolding ranks and left ranks
/// recovery + oversampling.
StreamFrame make_frame(const Dims& dims, std::vector<Index> recovery_ranks,
                       Index oversampling, std::uint64_t seed);

/// Sketches (Psi_k, Omega_k) of one tensor against a frame.
///
/// psi[k] is (l_{k} * n_k) x r_{k+1} with row index c + l_k * i (l_0 = r_d = 1);
/// omega[k] is l_{k+1} x r_{k+1} for the d-1 interior interfaces.
struct SketchPair {
  std::vector<Matrix> psi;
  std::vector<Matrix> omega;

  bool same_shape(const SketchPair& other) const;
  bool is_zero() const;
  SketchPair zeros_like() const;
};

SketchPair stta_sketch(const TTVector& t, const StreamFrame& frame);

/// y += alpha * x, entrywise on Psi and Omega.
void sketch_axpy(SketchPair& y, double alpha, const SketchPair& x);

SketchPair sketchpair_combine(std::span<const SketchPair> pairs, std::span<const double> coeffs);

/// Cores Omega_{k-1}^+ Psi_k followed by tt_round(spec).
TTVector stta_recover(const SketchPair& pair, const RoundSpec& spec,
                      double rcond = kRecoveryRcond);

}  // namespace ttk
