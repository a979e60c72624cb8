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

#include "ttk/problems.hpp"

#include <cmath>
#include <random>

#include "ttk/random.hpp"

namespace ttk {

namespace {

constexpr double kAssemblyTol = 1e-13;

TTOperator pair_term(Index d, Index n, Index i, const Matrix& m, double scale) {
  std::vector<Matrix> f(d, Matrix::Identity(n, n));
  f[i] = scale * m;
  f[i + 1] = m;
  return TTOperator::rank_one(f);
}

}  // namespace

void ConvectionDiffusionSpec::validate() const {
  if (d < 1) throw DomainError("d must be positive");
  if (n < 2) throw DomainError("n must be at least 2");
  if (!(diffusion > 0.0)) throw DomainError("diffusion must be positive");
  if (!convection.empty() && static_cast<Index>(convection.size()) != d) {
    throw ShapeError("need one convection coefficient per mode");
  }
}

void MarkovSpec::validate() const {
  if (d < 2) throw DomainError("d must be at least 2");
  if (n < 2) throw DomainError("n must be at least 2");
  if (sync_rate < 0.0) throw DomainError("sync_rate must be non-negative");
  if (!(rate_low > 0.0 && rate_low <= rate_high)) throw DomainError("need 0 < rate_low <= rate_high");
  if (precond_shift < 0.0) throw DomainError("precond_shift must be non-negative");
}

double grid_step(Index n) { return 2.0 / static_cast<double>(n + 1); }

Matrix diffusion_matrix(Index n, double k) {
  const double h = grid_step(n);
  const double c = k / (h * h);
  Matrix l = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    l(i, i) = -2.0 * c;
    if (i + 1 < n) {
      l(i, i + 1) = c;
      l(i + 1, i) = c;
    }
  }
  return l;
}

Matrix convection_matrix(Index n, double w) {
  const double c = w / grid_step(n);
  Matrix m = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    m(i, i) = -c;
    if (i + 1 < n) m(i, i + 1) = c;
  }
  return m;
}

Problem convection_diffusion(const ConvectionDiffusionSpec& spec) {
  spec.validate();
  const Index d = spec.d;
  const Index n = spec.n;
  const double h = grid_step(n);
  const Matrix l = diffusion_matrix(n, spec.diffusion);

  Problem p;
  p.name = "convection_diffusion";
  for (Index i = 0; i < d; ++i) {
    const double w = spec.convection.empty() ? 1e-2 : spec.convection[i];
    p.precond_factors.push_back(-(l + convection_matrix(n, w)));
  }
  p.a = kron_sum_operator(p.precond_factors);

  Vector g(n);
  for (Index j = 0; j < n; ++j) {
    const double x = -1.0 + static_cast<double>(j + 1) * h;
    g(j) = std::exp(-10.0 * x * x);
  }
  p.b = TTVector::rank_one(std::vector<Vector>(d, g));
  return p;
}

Matrix birth_death_generator(Index n, double low, double high, std::uint64_t seed) {
  std::mt19937_64 rng(mix_seed(seed));
  std::uniform_real_distribution<double> rate(low, high);
  Matrix q = Matrix::Zero(n, n);
  for (Index k = 0; k + 1 < n; ++k) q(k, k + 1) = rate(rng);
  for (Index k = 0; k + 1 < n; ++k) q(k + 1, k) = rate(rng);
  for (Index k = 0; k < n; ++k) q(k, k) = -q.row(k).sum();
  return q;
}

Problem markov_chain(const MarkovSpec& spec) {
  spec.validate();
  const Index d = spec.d;
  const Index n = spec.n;

  std::vector<Matrix> q;
  for (Index i = 0; i < d; ++i) {
    q.push_back(birth_death_generator(n, spec.rate_low, spec.rate_high,
                                      spec.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(i)));
  }

  // Joint failure n-1 -> n in both systems; F removes the same mass from the diagonal.
  Matrix e = Matrix::Zero(n, n);
  e(n - 2, n - 1) = 1.0;
  Matrix f = Matrix::Zero(n, n);
  f(n - 2, n - 2) = 1.0;

  const RoundSpec tidy{kAssemblyTol, std::nullopt};
  TTOperator g = kron_sum_operator(q);
  if (spec.sync_rate != 0.0) {
    for (Index i = 0; i + 1 < d; ++i) {
      g = tt_op_add(g, pair_term(d, n, i, e, spec.sync_rate));
      g = tt_op_add(g, pair_term(d, n, i, f, -spec.sync_rate));
      g = tt_op_round(g, tidy);
    }
  }

  Problem p;
  p.name = "markov_chain";
  p.generator = g;
  const std::vector<Matrix> avg(d, Matrix::Constant(n, n, 1.0 / static_cast<double>(n)));
  p.a = tt_op_round(tt_op_add(tt_op_scale(tt_op_transpose(g), -1.0), TTOperator::rank_one(avg)),
                    tidy);
  p.b = TTVector::ones(Dims(d, n));
  const Matrix shift = (spec.precond_shift / static_cast<double>(d)) * Matrix::Identity(n, n);
  for (const auto& qi : q) p.precond_factors.push_back(shift - qi.transpose());
  return p;
}

DenseSystem dense_reference(const Problem& p, Index cap) {
  checked_numel(p.b.dims(), cap);
  DenseSystem out;
  out.a = tt_op_to_dense(p.a, cap);
  out.b = tt_to_dense(p.b, cap).vec();
  return out;
}

}  // namespace ttk
