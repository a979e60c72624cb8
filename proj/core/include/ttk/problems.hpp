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
#include <string>
#include <vector>

#include "ttk/tt_operator.hpp"

namespace ttk {

/// -(L + D_i) on [-1, 1]^d with zero Dirichlet data, n interior nodes per mode.
struct ConvectionDiffusionSpec {
  Index d = 3;
  Index n = 32;
  double diffusion = 1e-2;
  /// One entry per mode; empty means 1e-2 everywhere.
  std::vector<double> convection;

  void validate() const;
};

/// d birth-death chains with synchronized failures between neighbours.
struct MarkovSpec {
  Index d = 3;
  Index n = 8;
  double sync_rate = 0.1;
  double rate_low = 1.0;
  double rate_high = 2.0;
  std::uint64_t seed = 0;
  /// Total shift sigma added to the singular Kronecker-sum part seen by the preconditioner.
  double precond_shift = 1e-3;

  void validate() const;
};

struct Problem {
  std::string name;
  /// System operator A in A x = b.
  TTOperator a;
  TTVector b;
  /// Kronecker-sum blocks for the exponential-sum preconditioner.
  std::vector<Matrix> precond_factors;
  /// Generator Q + W - D of the Markov model; empty for the PDE.
  TTOperator generator;
};

/// Grid spacing 2 / (n + 1).
double grid_step(Index n);
Matrix diffusion_matrix(Index n, double k);
Matrix convection_matrix(Index n, double w);

Problem convection_diffusion(const ConvectionDiffusionSpec& spec);

/// Birth-death generator with rates uniform in [low, high].
Matrix birth_death_generator(Index n, double low, double high, std::uint64_t seed);

/// A = -G^T + 1 1^T / N so that A x = 1 has solution N * pi with pi G = 0, sum(pi) = 1.
Problem markov_chain(const MarkovSpec& spec);

struct DenseSystem {
  Matrix a;
  Vector b;
};

DenseSystem dense_reference(const Problem& p, Index cap = kDefaultDenseCap);

}  // namespace ttk
