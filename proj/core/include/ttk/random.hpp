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
#include <random>

#include "ttk/tt_vector.hpp"

namespace ttk {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Deterministic normal generator for a (seed, stream) pair.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream);
  double operator()(double stddev) { return stddev * dist_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

/// Random Gaussian TT tensor: core k has i.i.d. N(0, 1/(r_{k-1} n_k r_k)) entries.
/// `ranks` holds the d-1 interior ranks.
TTVector random_gaussian_tt(const Dims& dims, const std::vector<Index>& ranks,
                            std::uint64_t seed);

}  // namespace ttk
