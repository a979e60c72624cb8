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
#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace ttk {
namespace {

using testing::dense;
using testing::kron_vec;
using testing::rel_diff;

TEST(TTCore, UnfoldingsShareStorage) {
  TTCore c(2, 3, 4);
  c(1, 2, 3) = 7.0;
  EXPECT_EQ(c.left()(1 + 2 * 2, 3), 7.0);
  EXPECT_EQ(c.right()(1, 2 + 3 * 3), 7.0);
}

TEST(TTVector, RejectsBrokenRankChain) {
  std::vector<TTCore> cores{TTCore(1, 2, 3), TTCore(2, 2, 1)};
  EXPECT_THROW(TTVector{cores}, ShapeError);
  std::vector<TTCore> open{TTCore(2, 2, 1)};
  EXPECT_THROW(TTVector{open}, ShapeError);
}

TEST(TTVector, RankOneMatchesKronecker) {
  Vector a(2), b(3), c(2);
  a << 1, 2;
  b << 3, -1, 0.5;
  c << -2, 4;
  const TTVector v = TTVector::rank_one({a, b, c});
  EXPECT_LT(rel_diff(dense(v), kron_vec({a, b, c})), 1e-15);
  EXPECT_EQ(v.ranks(), (std::vector<Index>{1, 1, 1, 1}));
}

TEST(TTVector, ZerosAndOnes) {
  const Dims dims{3, 2, 4};
  EXPECT_EQ(dense(TTVector::zeros(dims)).norm(), 0.0);
  EXPECT_NEAR(tt_norm(TTVector::ones(dims)), std::sqrt(24.0), 1e-14);
}

TEST(TTVector, DenseRoundTrip) {
  const TTVector v = random_gaussian_tt({3, 4, 5}, {2, 3}, 1);
  const TTVector back = tt_from_dense(tt_to_dense(v), RoundSpec{1e-13, std::nullopt});
  EXPECT_LT(rel_diff(dense(back), dense(v)), 1e-12);
  EXPECT_LE(back.ranks()[1], 2);
  EXPECT_LE(back.ranks()[2], 3);
}

TEST(TTVector, FromDenseRecoversSeparableTensor) {
  DenseTensor t({4, 3, 5});
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index k = 0; k < 5; ++k) t.data[(i * 3 + j) * 5 + k] = std::sin(i + 1.0) * (j + 2.0) + k;
  const TTVector v = tt_from_dense(t, RoundSpec{1e-12, std::nullopt});
  EXPECT_EQ(v.ranks(), (std::vector<Index>{1, 2, 2, 1}));
  EXPECT_LT(rel_diff(dense(v), t.vec()), 1e-12);
}

TEST(TTVector, DenseCapIsEnforced) {
  const TTVector v = TTVector::ones({100, 100, 100});
  EXPECT_THROW(tt_to_dense(v, 10'000), SizeError);
}

TEST(TTArithmetic, AddScaleAxpby) {
  const TTVector a = random_gaussian_tt({3, 4, 2}, {2, 2}, 2);
  const TTVector b = random_gaussian_tt({3, 4, 2}, {3, 1}, 3);
  EXPECT_LT(rel_diff(dense(tt_add(a, b)), dense(a) + dense(b)), 1e-14);
  EXPECT_LT(rel_diff(dense(tt_scale(a, -2.5)), -2.5 * dense(a)), 1e-15);
  EXPECT_LT(rel_diff(dense(tt_axpby(0.5, a, 3.0, b)), 0.5 * dense(a) + 3.0 * dense(b)), 1e-14);
  EXPECT_EQ(tt_add(a, b).ranks(), (std::vector<Index>{1, 5, 3, 1}));
  EXPECT_THROW(tt_add(a, random_gaussian_tt({3, 4, 3}, {2, 2}, 4)), ShapeError);
}

TEST(TTArithmetic, SingleModeAdd) {
  const TTVector a = random_gaussian_tt({6}, {}, 5);
  const TTVector b = random_gaussian_tt({6}, {}, 6);
  EXPECT_LT(rel_diff(dense(tt_add(a, b)), dense(a) + dense(b)), 1e-15);
  EXPECT_EQ(tt_add(a, b).ranks(), (std::vector<Index>{1, 1}));
}

TEST(TTArithmetic, DotAndNorm) {
  const TTVector a = random_gaussian_tt({2, 5, 3, 2}, {2, 4, 2}, 7);
  const TTVector b = random_gaussian_tt({2, 5, 3, 2}, {3, 2, 2}, 8);
  EXPECT_NEAR(tt_dot(a, b), dense(a).dot(dense(b)), 1e-13);
  EXPECT_NEAR(tt_norm(a), dense(a).norm(), 1e-13);
}

TEST(TTRound, ContractHoldsOnRandomSums) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TTVector a = random_gaussian_tt({4, 5, 3, 4}, {3, 4, 3}, seed);
    const TTVector b = random_gaussian_tt({4, 5, 3, 4}, {2, 3, 2}, seed + 100);
    const TTVector v = tt_axpby(1.0, a, 1e-3, b);
    for (double tol : {1e-1, 1e-4, 1e-10}) {
      const TTVector r = tt_round(v, RoundSpec{tol, std::nullopt});
      EXPECT_LE((dense(v) - dense(r)).norm(), tol * dense(v).norm() * (1 + 1e-12));
    }
  }
}

TEST(TTRound, RemovesRedundantRank) {
  const TTVector a = random_gaussian_tt({4, 5, 6, 3}, {3, 4, 2}, 7);
  const TTVector r = tt_round(tt_add(a, tt_scale(a, 0.5)), RoundSpec{1e-10, std::nullopt});
  EXPECT_EQ(r.ranks(), (std::vector<Index>{1, 3, 4, 2, 1}));
  EXPECT_LT(rel_diff(dense(r), 1.5 * dense(a)), 1e-12);
}

TEST(TTRound, CapBoundsRanks) {
  const TTVector a = random_gaussian_tt({5, 5, 5, 5}, {5, 8, 5}, 9);
  const TTVector r = tt_round(a, RoundSpec{0.0, Index{2}});
  EXPECT_LE(r.max_rank(), 2);
}

TEST(TTRound, ZeroStaysZero) {
  const TTVector z = tt_scale(random_gaussian_tt({3, 3, 3}, {2, 2}, 1), 0.0);
  const TTVector r = tt_round(z, RoundSpec{1e-8, std::nullopt});
  EXPECT_EQ(tt_norm(r), 0.0);
  EXPECT_EQ(r.max_rank(), 1);
}

TEST(TTRound, RejectsBadSpec) {
  const TTVector a = TTVector::ones({2, 2});
  EXPECT_THROW(tt_round(a, RoundSpec{-1.0, std::nullopt}), DomainError);
  EXPECT_THROW(tt_round(a, RoundSpec{1e-3, Index{0}}), DomainError);
}

TEST(TruncationRank, DropsTailWithinBudget) {
  Vector s(4);
  s << 4.0, 2.0, 0.3, 0.4e-1;
  EXPECT_EQ(truncation_rank(s, 0.0, std::nullopt), 4);
  EXPECT_EQ(truncation_rank(s, 0.05, std::nullopt), 3);
  EXPECT_EQ(truncation_rank(s, std::hypot(0.3, 0.04), std::nullopt), 2);
  EXPECT_EQ(truncation_rank(s, 100.0, std::nullopt), 1);
  EXPECT_EQ(truncation_rank(s, 0.0, Index{2}), 2);
}

TEST(ModeMultiply, MatchesDenseKronecker) {
  const TTVector v = random_gaussian_tt({3, 4, 2}, {2, 3}, 11);
  Matrix m = Matrix::Random(5, 4);
  const TTVector out = mode_multiply(v, 1, m);
  const Matrix op = testing::kron_all({Matrix::Identity(3, 3), m, Matrix::Identity(2, 2)});
  EXPECT_LT(rel_diff(dense(out), op * dense(v)), 1e-14);
  EXPECT_EQ(out.dims(), (Dims{3, 5, 2}));
  EXPECT_THROW(mode_multiply(v, 0, m), ShapeError);
}

}  // namespace
}  // namespace ttk
