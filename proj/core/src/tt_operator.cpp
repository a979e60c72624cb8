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

#include "ttk/tt_operator.hpp"

#include <algorithm>
#include <string>

namespace ttk {

OpCore::OpCore(Index rho0, Index m, Index n, Index rho1)
    : rho0_(rho0), m_(m), n_(n), rho1_(rho1),
      data_(static_cast<std::size_t>(rho0 * m * n * rho1), 0.0) {
  if (rho0 < 1 || m < 1 || n < 1 || rho1 < 1) {
    throw ShapeError("operator core extents must be positive");
  }
}

Matrix OpCore::block(Index a, Index b) const {
  Matrix blk(m_, n_);
  for (Index j = 0; j < n_; ++j)
    for (Index i = 0; i < m_; ++i) blk(i, j) = (*this)(a, i, j, b);
  return blk;
}

void OpCore::set_block(Index a, Index b, const Matrix& blk) {
  if (blk.rows() != m_ || blk.cols() != n_) throw ShapeError("operator block has wrong shape");
  for (Index j = 0; j < n_; ++j)
    for (Index i = 0; i < m_; ++i) (*this)(a, i, j, b) = blk(i, j);
}

TTCore OpCore::fused() const {
  TTCore c(rho0_, m_ * n_, rho1_);
  std::copy(data_.begin(), data_.end(), c.data().begin());
  return c;
}

OpCore OpCore::from_fused(const TTCore& c, Index m, Index n) {
  if (c.n() != m * n) throw ShapeError("fused mode size does not factor as m*n");
  OpCore o(c.r0(), m, n, c.r1());
  std::copy(c.data().begin(), c.data().end(), o.data_.begin());
  return o;
}

TTOperator::TTOperator(std::vector<OpCore> cores) : cores_(std::move(cores)) {
  if (cores_.empty()) throw ShapeError("TT operator needs at least one core");
  if (cores_.front().rho0() != 1 || cores_.back().rho1() != 1) {
    throw ShapeError("boundary operator ranks must be 1");
  }
  for (std::size_t k = 1; k < cores_.size(); ++k) {
    if (cores_[k - 1].rho1() != cores_[k].rho0()) {
      throw ShapeError("operator ranks do not chain at core " + std::to_string(k));
    }
  }
}

TTOperator TTOperator::identity(const Dims& dims) {
  std::vector<Matrix> eye;
  eye.reserve(dims.size());
  for (Index n : dims) eye.push_back(Matrix::Identity(n, n));
  return rank_one(eye);
}

TTOperator TTOperator::rank_one(const std::vector<Matrix>& factors) {
  if (factors.empty()) throw ShapeError("TT operator needs at least one mode");
  std::vector<OpCore> cores;
  cores.reserve(factors.size());
  for (const auto& f : factors) {
    OpCore c(1, f.rows(), f.cols(), 1);
    c.set_block(0, 0, f);
    cores.push_back(std::move(c));
  }
  return TTOperator(std::move(cores));
}

Dims TTOperator::row_dims() const {
  Dims d;
  for (const auto& c : cores_) d.push_back(c.rows());
  return d;
}

Dims TTOperator::col_dims() const {
  Dims d;
  for (const auto& c : cores_) d.push_back(c.cols());
  return d;
}

std::vector<Index> TTOperator::ranks() const {
  std::vector<Index> r{1};
  for (const auto& c : cores_) r.push_back(c.rho1());
  return r;
}

Index TTOperator::max_rank() const {
  Index m = 1;
  for (const auto& c : cores_) m = std::max(m, c.rho1());
  return m;
}

TTVector tt_matvec(const TTOperator& a, const TTVector& v) {
  if (a.order() != v.order()) throw ShapeError("operator and vector orders differ");
  const Index d = v.order();
  std::vector<TTCore> cores;
  cores.reserve(d);
  for (Index k = 0; k < d; ++k) {
    const OpCore& oc = a.core(k);
    const TTCore& vc = v.core(k);
    if (oc.cols() != vc.n()) throw ShapeError("operator column dims do not match vector dims");
    const Index r0 = vc.r0();
    const Index r1 = vc.r1();
    const Index n = vc.n();
    const Index m = oc.rows();
    // mid(j, l + r0 * l') = C[l, j, l']
    Matrix mid(n, r0 * r1);
    for (Index lp = 0; lp < r1; ++lp)
      for (Index j = 0; j < n; ++j)
        for (Index l = 0; l < r0; ++l) mid(j, l + r0 * lp) = vc(l, j, lp);
    TTCore out(r0 * oc.rho0(), m, r1 * oc.rho1());
    for (Index beta = 0; beta < oc.rho1(); ++beta) {
      for (Index alpha = 0; alpha < oc.rho0(); ++alpha) {
        Matrix blk = oc.block(alpha, beta);
        if (blk.isZero(0.0)) continue;
        Matrix prod = blk * mid;  // m x (r0 * r1)
        for (Index lp = 0; lp < r1; ++lp)
          for (Index i = 0; i < m; ++i)
            for (Index l = 0; l < r0; ++l)
              out(l + r0 * alpha, i, lp + r1 * beta) = prod(i, l + r0 * lp);
      }
    }
    cores.push_back(std::move(out));
  }
  return TTVector(std::move(cores));
}

namespace {

TTVector fuse(const TTOperator& a) {
  std::vector<TTCore> cores;
  cores.reserve(a.order());
  for (const auto& c : a.cores()) cores.push_back(c.fused());
  return TTVector(std::move(cores));
}

TTOperator unfuse(const TTVector& v, const Dims& rows, const Dims& cols) {
  std::vector<OpCore> cores;
  cores.reserve(v.order());
  for (Index k = 0; k < v.order(); ++k) {
    cores.push_back(OpCore::from_fused(v.core(k), rows[k], cols[k]));
  }
  return TTOperator(std::move(cores));
}

void require_same_shape(const TTOperator& a, const TTOperator& b) {
  if (a.row_dims() != b.row_dims() || a.col_dims() != b.col_dims()) {
    throw ShapeError("TT operators have different shapes");
  }
}

}  // namespace

TTOperator tt_op_add(const TTOperator& a, const TTOperator& b) {
  require_same_shape(a, b);
  return unfuse(tt_add(fuse(a), fuse(b)), a.row_dims(), a.col_dims());
}

TTOperator tt_op_scale(const TTOperator& a, double alpha) {
  return unfuse(tt_scale(fuse(a), alpha), a.row_dims(), a.col_dims());
}

TTOperator tt_op_transpose(const TTOperator& a) {
  std::vector<OpCore> cores;
  cores.reserve(a.order());
  for (const auto& c : a.cores()) {
    OpCore t(c.rho0(), c.cols(), c.rows(), c.rho1());
    for (Index b = 0; b < c.rho1(); ++b)
      for (Index j = 0; j < c.cols(); ++j)
        for (Index i = 0; i < c.rows(); ++i)
          for (Index al = 0; al < c.rho0(); ++al) t(al, j, i, b) = c(al, i, j, b);
    cores.push_back(std::move(t));
  }
  return TTOperator(std::move(cores));
}

TTOperator tt_op_round(const TTOperator& a, const RoundSpec& spec) {
  return unfuse(tt_round(fuse(a), spec), a.row_dims(), a.col_dims());
}

TTOperator kron_sum_operator(const std::vector<Matrix>& factors) {
  if (factors.empty()) throw ShapeError("Kronecker sum needs at least one factor");
  for (const auto& f : factors) {
    if (f.rows() != f.cols()) throw ShapeError("Kronecker sum factors must be square");
  }
  const Index d = static_cast<Index>(factors.size());
  if (d == 1) return TTOperator::rank_one(factors);
  // Channel 0 carries "nothing applied yet", channel 1 "factor already applied".
  std::vector<OpCore> cores;
  cores.reserve(d);
  for (Index k = 0; k < d; ++k) {
    const Index n = factors[k].rows();
    const Matrix eye = Matrix::Identity(n, n);
    if (k == 0) {
      OpCore c(1, n, n, 2);
      c.set_block(0, 0, eye);
      c.set_block(0, 1, factors[k]);
      cores.push_back(std::move(c));
    } else if (k == d - 1) {
      OpCore c(2, n, n, 1);
      c.set_block(0, 0, factors[k]);
      c.set_block(1, 0, eye);
      cores.push_back(std::move(c));
    } else {
      OpCore c(2, n, n, 2);
      c.set_block(0, 0, eye);
      c.set_block(0, 1, factors[k]);
      c.set_block(1, 1, eye);
      cores.push_back(std::move(c));
    }
  }
  return TTOperator(std::move(cores));
}

Matrix tt_op_to_dense(const TTOperator& a, Index cap) {
  const Dims rows = a.row_dims();
  const Dims cols = a.col_dims();
  const Index nr = checked_numel(rows, cap);
  const Index nc = checked_numel(cols, cap);
  if (nr > cap / nc) throw SizeError("dense operator exceeds cap");
  // Chain of block matrices indexed by the trailing operator rank.
  std::vector<Matrix> acc{Matrix::Ones(1, 1)};
  for (const auto& c : a.cores()) {
    std::vector<Matrix> next(c.rho1());
    const Index pr = acc[0].rows();
    const Index pc = acc[0].cols();
    for (Index b = 0; b < c.rho1(); ++b) {
      next[b] = Matrix::Zero(pr * c.rows(), pc * c.cols());
      for (Index al = 0; al < c.rho0(); ++al) {
        Matrix blk = c.block(al, b);
        if (blk.isZero(0.0)) continue;
        // Kronecker product acc[al] (x) blk: the new mode index varies fastest.
        for (Index p = 0; p < pr; ++p)
          for (Index q = 0; q < pc; ++q) {
            const double s = acc[al](p, q);
            if (s == 0.0) continue;
            next[b].block(p * c.rows(), q * c.cols(), c.rows(), c.cols()) += s * blk;
          }
      }
    }
    acc = std::move(next);
  }
  return acc[0];
}

}  // namespace ttk
