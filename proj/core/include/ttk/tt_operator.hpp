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

#include <vector>

#include "ttk/tt_vector.hpp"

namespace ttk {

/// Order-4 operator core of shape rho0 x m x n x rho1.
///
/// Entry (a, i, j, b) lives at a + rho0 * (i + m * (j + n * b)), so the core
/// can be viewed as an order-3 core with fused mode size m*n (row index fastest).
class OpCore {
 public:
  OpCore() = default;
  OpCore(Index rho0, Index m, Index n, Index rho1);

  Index rho0() const { return rho0_; }
  Index rows() const { return m_; }
  Index cols() const { return n_; }
  Index rho1() const { return rho1_; }

  double& operator()(Index a, Index i, Index j, Index b) {
    return data_[a + rho0_ * (i + m_ * (j + n_ * b))];
  }
  double operator()(Index a, Index i, Index j, Index b) const {
    return data_[a + rho0_ * (i + m_ * (j + n_ * b))];
  }

  /// The m x n block coupling rank indices (a, b).
  Matrix block(Index a, Index b) const;
  void set_block(Index a, Index b, const Matrix& blk);

  /// Same buffer seen as an order-3 core with mode size m*n.
  TTCore fused() const;
  static OpCore from_fused(const TTCore& c, Index m, Index n);

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

 private:
  Index rho0_ = 0;
  Index m_ = 0;
  Index n_ = 0;
  Index rho1_ = 0;
  std::vector<double> data_;
};

/// Linear map between TT spaces stored as a chain of order-4 cores.
class TTOperator {
 public:
  TTOperator() = default;
  explicit TTOperator(std::vector<OpCore> cores);

  /// Identity on the given mode sizes (operator ranks all 1).
  static TTOperator identity(const Dims& dims);
  /// Rank-1 operator M_1 (x) ... (x) M_d acting mode-wise.
  static TTOperator rank_one(const std::vector<Matrix>& factors);

  Index order() const { return static_cast<Index>(cores_.size()); }
  Dims row_dims() const;
  Dims col_dims() const;
  std::vector<Index> ranks() const;
  Index max_rank() const;

  const OpCore& core(Index k) const { return cores_[k]; }
  OpCore& core(Index k) { return cores_[k]; }
  const std::vector<OpCore>& cores() const { return cores_; }

 private:
  std::vector<OpCore> cores_;
};

/// Exact TT matrix-vector product; output ranks are rho_k * r_k.
TTVector tt_matvec(const TTOperator& a, const TTVector& v);

TTOperator tt_op_add(const TTOperator& a, const TTOperator& b);
TTOperator tt_op_scale(const TTOperator& a, double alpha);
TTOperator tt_op_transpose(const TTOperator& a);
TTOperator tt_op_round(const TTOperator& a, const RoundSpec& spec);

/// Kronecker sum where factor k acts on mode k; operator ranks (1,2,...,2,1).
TTOperator kron_sum_operator(const std::vector<Matrix>& factors);

/// Dense matricization, rows and columns flattened row-major like DenseTensor.
Matrix tt_op_to_dense(const TTOperator& a, Index cap = kDefaultDenseCap);

}  // namespace ttk
