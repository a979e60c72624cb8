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
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ttk/errors.hpp"

namespace ttk {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using MatrixMap = Eigen::Map<Matrix>;
using ConstMatrixMap = Eigen::Map<const Matrix>;

/// Dimensions of a d-mode tensor.
using Dims = std::vector<Index>;

/// Default cap on the number of entries of any dense materialization.
inline constexpr Index kDefaultDenseCap = 1'000'000;

/// Order-3 TT core of shape r0 x n x r1.
///
/// Storage is column-major in (a, i, b), i.e. entry (a, i, b) lives at
/// a + r0 * (i + n * b). Both unfoldings are therefore views of the same
/// buffer: the left unfolding is (r0*n) x r1 with row a + r0*i, the right
/// unfolding is r0 x (n*r1) with column i + n*b.
class TTCore {
 public:
  TTCore() = default;
  TTCore(Index r0, Index n, Index r1);

  Index r0() const { return r0_; }
  Index n() const { return n_; }
  Index r1() const { return r1_; }
  Index size() const { return r0_ * n_ * r1_; }

  double& operator()(Index a, Index i, Index b) { return data_[a + r0_ * (i + n_ * b)]; }
  double operator()(Index a, Index i, Index b) const { return data_[a + r0_ * (i + n_ * b)]; }

  MatrixMap left() { return {data_.data(), r0_ * n_, r1_}; }
  ConstMatrixMap left() const { return {data_.data(), r0_ * n_, r1_}; }
  MatrixMap right() { return {data_.data(), r0_, n_ * r1_}; }
  ConstMatrixMap right() const { return {data_.data(), r0_, n_ * r1_}; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  /// Core whose left unfolding is `m`.
  static TTCore from_left(const Matrix& m, Index r0, Index n);
  /// Core whose right unfolding is `m`.
  static TTCore from_right(const Matrix& m, Index n, Index r1);

 private:
  Index r0_ = 0;
  Index n_ = 0;
  Index r1_ = 0;
  std::vector<double> data_;
};

/// A d-mode tensor stored as a chain of order-3 cores with r_0 = r_d = 1.
class TTVector {
 public:
  TTVector() = default;
  /// Validates rank chaining; throws ShapeError on inconsistent cores.
  explicit TTVector(std::vector<TTCore> cores);

  static TTVector zeros(const Dims& dims);
  static TTVector ones(const Dims& dims);
  /// Rank-1 tensor f_1 (x) f_2 (x) ... (x) f_d.
  static TTVector rank_one(const std::vector<Vector>& factors);

  Index order() const { return static_cast<Index>(cores_.size()); }
  Dims dims() const;
  Index dim(Index k) const { return cores_[k].n(); }
  /// Rank profile (r_0, ..., r_d).
  std::vector<Index> ranks() const;
  Index max_rank() const;
  /// Number of stored core entries.
  Index storage() const;

  const TTCore& core(Index k) const { return cores_[k]; }
  TTCore& core(Index k) { return cores_[k]; }
  const std::vector<TTCore>& cores() const { return cores_; }

 private:
  std::vector<TTCore> cores_;
};

/// Dense d-mode array, row-major: the last mode index varies fastest.
struct DenseTensor {
  Dims dims;
  std::vector<double> data;

  DenseTensor() = default;
  explicit DenseTensor(Dims d);
  Index size() const { return static_cast<Index>(data.size()); }
  Eigen::Map<const Vector> vec() const& { return {data.data(), size()}; }
  Eigen::Map<Vector> vec() & { return {data.data(), size()}; }
  Vector vec() && { return Eigen::Map<const Vector>(data.data(), size()); }
};

/// Truncation controls for TT rounding.
struct RoundSpec {
  double rel_tol = 0.0;
  std::optional<Index> max_rank;

  void validate() const;
};

/// Product of dims; throws SizeError when it exceeds `cap`.
Index checked_numel(const Dims& dims, Index cap = kDefaultDenseCap);

TTVector tt_from_dense(const DenseTensor& tensor, const RoundSpec& spec);
DenseTensor tt_to_dense(const TTVector& v, Index cap = kDefaultDenseCap);

TTVector tt_add(const TTVector& a, const TTVector& b);
TTVector tt_scale(const TTVector& a, double alpha);
/// alpha*a + beta*b without rounding.
TTVector tt_axpby(double alpha, const TTVector& a, double beta, const TTVector& b);
double tt_dot(const TTVector& a, const TTVector& b);
double tt_norm(const TTVector& a);

/// TT-SVD rounding: right-to-left QR sweep, then left-to-right truncated SVDs.
/// Each of the d-1 truncations gets a budget of rel_tol*||v||/sqrt(d-1).
TTVector tt_round(const TTVector& v, const RoundSpec& spec);

/// Multiplies mode k by `m` (rows x n_k); ranks are unchanged.
TTVector mode_multiply(const TTVector& v, Index k, const Matrix& m);
TTCore mode_multiply(const TTCore& c, const Matrix& m);

/// Number of singular values (sorted descending) kept so that the discarded
/// tail has 2-norm at most `budget`, capped by `max_rank`; always >= 1.
Index truncation_rank(const Vector& singular_values, double budget,
                      std::optional<Index> max_rank);

}  // namespace ttk
