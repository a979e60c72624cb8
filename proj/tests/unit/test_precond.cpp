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

#include <cmath>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "test_support.hpp"

namespace ttk {
namespace {

using testing::dense;
using testing::rel_diff;

Matrix laplacian(Index n) {
  Matrix l = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    l(i, i) = 2.0;
    if (i + 1 < n) l(i, i + 1) = l(i + 1, i) = -1.0;
  }
  return l;
}

/// Taylor series on M / 2^s, then squared back.
Matrix taylor_exp(const Matrix& m) {
  int s = 0;
  double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.5) {
    norm /= 2;
    ++s;
  }
  const Matrix a = m / std::ldexp(1.0, s);
  Matrix term = Matrix::Identity(m.rows(), m.cols());
  Matrix out = term;
  for (int k = 1; k < 60 && term.norm() > 1e-16; ++k) {
    term = term * a / k;
    out += term;
  }
  for (int i = 0; i < s; ++i) out = out * out;
  return out;
}

TEST(MatrixExp, TrivialCases) {
  EXPECT_EQ(matrix_exp(Matrix::Zero(4, 4)), Matrix::Identity(4, 4));
  Vector a(3);
  a << -2.0, 0.5, 3.0;
  const Matrix e = matrix_exp(a.asDiagonal());
  EXPECT_LT((e - Matrix(a.array().exp().matrix().asDiagonal())).norm(), 1e-13 * e.norm());
  EXPECT_THROW(matrix_exp(Matrix::Zero(2, 3)), ShapeError);
}

TEST(MatrixExp, FrozenReference) {
  Matrix m(3, 3);
  m << 0.3, -1.2, 0.5, 0.7, 0.1, -0.4, -0.2, 0.9, -0.6;
  Matrix ref(3, 3);
  ref << 0.8585244861229779, -1.007843284659191, 0.5553253504925355, 0.7339599122573511,
      0.5476974801034414, -0.09714850741550385, 0.12839305069776116, 0.6567381303033528,
      0.43205706516655773;
  EXPECT_LT((matrix_exp(m) - ref).norm(), 1e-14);
}

TEST(MatrixExp, MatchesTaylorOracle) {
  std::mt19937 rng(4);
  std::normal_distribution<double> g;
  Matrix m(8, 8);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  const Matrix ref = taylor_exp(m);
  EXPECT_LT((matrix_exp(m) - ref).norm(), 1e-10 * ref.norm());
}

TEST(ExpSum, ConvergesOnPoint) {
  const ExpSum e = expsum_coeffs(1.0, 1.0, 40);
  EXPECT_NEAR(e(1.0), 1.0, 1e-8);
}

TEST(ExpSum, ErrorBoundIsReported) {
  const ExpSum e = expsum_coeffs(0.1, 800.0, 17);
  EXPECT_EQ(e.terms(), 17);
  EXPECT_NEAR(e.max_rel_error, expsum_error(e, 0.1, 800.0), 1e-15);
  EXPECT_LE(e.max_rel_error, 1e-4);
  for (double b : e.beta) EXPECT_GT(b, 0.0);
  EXPECT_LE(expsum_coeffs(0.1, 800.0, 33).max_rel_error, e.max_rel_error);
  EXPECT_THROW(expsum_coeffs(0.0, 1.0, 5), DomainError);
  EXPECT_THROW(expsum_coeffs(2.0, 1.0, 5), DomainError);
}

TEST(SpectralInterval, TrivialCases) {
  const SpectralInterval id = spectral_interval({Matrix::Identity(4, 4), Matrix::Identity(4, 4),
                                                 Matrix::Identity(4, 4)});
  EXPECT_NEAR(id.lambda_min, 3.0, 1e-12);
  EXPECT_NEAR(id.lambda_max, 3.0, 1e-12);
  Vector dg(3);
  dg << 1.0, 2.0, 3.0;
  const SpectralInterval di = spectral_interval({Matrix(dg.asDiagonal())});
  EXPECT_LE(di.lambda_min, 1.0 + 1e-12);
  EXPECT_GE(di.lambda_max, 3.0 - 1e-12);
}

TEST(SpectralInterval, ContainsLaplacianSpectrum) {
  const std::vector<Matrix> f(3, laplacian(8));
  const SpectralInterval iv = spectral_interval(f);
  const Eigen::SelfAdjointEigenSolver<Matrix> es(testing::kron_sum(f));
  EXPECT_LE(iv.lambda_min, es.eigenvalues().minCoeff() * (1 + 1e-12));
  EXPECT_GE(iv.lambda_max, es.eigenvalues().maxCoeff() * (1 - 1e-12));
  EXPECT_GT(iv.lambda_min, 0.0);
}

TEST(ExpSumPreconditioner, IdentityTerm) {
  const ExpSumPreconditioner p({Matrix::Random(3, 3), Matrix::Random(4, 4)}, {1.0}, {0.0});
  const TTVector v = random_gaussian_tt({3, 4}, {2}, 1);
  EXPECT_LT(rel_diff(dense(p.apply_inverse(v)), dense(v)), 1e-7);
  EXPECT_LT(rel_diff(dense(p.apply_exact(v)), dense(v)), 1e-15);
  EXPECT_THROW(ExpSumPreconditioner({Matrix::Identity(2, 2)}, {1.0}, {-1.0}), DomainError);
  EXPECT_THROW(ExpSumPreconditioner({Matrix::Identity(2, 2)}, {1.0, 2.0}, {1.0}), ShapeError);
  EXPECT_THROW(p.apply_inverse(TTVector::ones({4, 3})), ShapeError);
}

class ApproxInverse : public ::testing::TestWithParam<Accumulation> {};

TEST_P(ApproxInverse, InvertsKroneckerSum) {
  std::vector<Matrix> f;
  for (Index i = 0; i < 3; ++i) {
    Matrix a = laplacian(6) * 10.0;
    a(0, 1) += 0.3 * static_cast<double>(i);
    f.push_back(a);
  }
  ExpSumOptions opts;
  opts.accumulation = GetParam();
  opts.round = RoundSpec{1e-12, std::nullopt};
  opts.frame_rank = 40;
  const ExpSumPreconditioner p = ExpSumPreconditioner::build(f, 25, opts);
  const Matrix q = testing::kron_sum(f);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    TTVector x = random_gaussian_tt({6, 6, 6}, {2, 2}, seed);
    x = tt_scale(x, 1.0 / tt_norm(x));
    const TTVector qx = tt_from_dense(
        [&] {
          DenseTensor t({6, 6, 6});
          t.vec() = q * dense(x);
          return t;
        }(),
        RoundSpec{1e-14, std::nullopt});
    const double err = rel_diff(dense(p.apply_inverse(qx)), dense(x));
    EXPECT_LE(err, 10.0 * p.fit_error() + 1e-9) << "seed=" << seed;
  }
}

INSTANTIATE_TEST_SUITE_P(Modes, ApproxInverse,
                         ::testing::Values(Accumulation::kSequential, Accumulation::kStta));

TEST(ExpSumPreconditioner, RankLawAndLinearity) {
  const std::vector<Matrix> f(3, laplacian(5));
  ExpSumOptions opts;
  opts.accumulation = Accumulation::kSequential;
  opts.round = RoundSpec{1e-13, std::nullopt};
  const ExpSumPreconditioner p = ExpSumPreconditioner::build(f, 7, opts);
  const TTVector a = random_gaussian_tt({5, 5, 5}, {2, 1}, 3);
  const TTVector b = random_gaussian_tt({5, 5, 5}, {1, 2}, 4);
  const TTVector raw = p.apply_exact(a);
  EXPECT_EQ(raw.ranks(), (std::vector<Index>{1, 14, 7, 1}));
  const Vector lhs = dense(p.apply_inverse(tt_axpby(2.0, a, -0.5, b)));
  const Vector rhs = 2.0 * dense(p.apply_inverse(a)) - 0.5 * dense(p.apply_inverse(b));
  EXPECT_LT(rel_diff(lhs, rhs), 1e-11);
}

TEST(ExpSumPreconditioner, SttaAccumulationRespectsCap) {
  const std::vector<Matrix> f(4, laplacian(6));
  ExpSumOptions opts;
  opts.round = RoundSpec{1e-10, Index{3}};
  const ExpSumPreconditioner p = ExpSumPreconditioner::build(f, 9, opts);
  const TTVector v = random_gaussian_tt({6, 6, 6, 6}, {2, 3, 2}, 8);
  EXPECT_LE(p.apply_inverse(v).max_rank(), 3);
}

}  // namespace
}  // namespace ttk
