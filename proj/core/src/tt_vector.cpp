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

#include "ttk/tt_vector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace ttk {

TTCore::TTCore(Index r0, Index n, Index r1)
    : r0_(r0), n_(n), r1_(r1), data_(static_cast<std::size_t>(r0 * n * r1), 0.0) {
  if (r0 < 1 || n < 1 || r1 < 1) {
    throw ShapeError("TT core extents must be positive");
  }
}

TTCore TTCore::from_left(const Matrix& m, Index r0, Index n) {
  if (m.rows() != r0 * n) throw ShapeError("left unfolding has wrong row count");
  TTCore c(r0, n, m.cols());
  c.left() = m;
  return c;
}

TTCore TTCore::from_right(const Matrix& m, Index n, Index r1) {
  if (m.cols() != n * r1) throw ShapeError("right unfolding has wrong column count");
  TTCore c(m.rows(), n, r1);
  c.right() = m;
  return c;
}

TTVector::TTVector(std::vector<TTCore> cores) : cores_(std::move(cores)) {
  if (cores_.empty()) throw ShapeError("TT vector needs at least one core");
  if (cores_.front().r0() != 1 || cores_.back().r1() != 1) {
    throw ShapeError("boundary TT ranks must be 1");
  }
  for (std::size_t k = 1; k < cores_.size(); ++k) {
    if (cores_[k - 1].r1() != cores_[k].r0()) {
      throw ShapeError("TT ranks do not chain between cores " + std::to_string(k - 1) +
                       " and " + std::to_string(k));
    }
  }
}

TTVector TTVector::zeros(const Dims& dims) {
  if (dims.empty()) throw ShapeError("TT vector needs at least one mode");
  std::vector<TTCore> cores;
  cores.reserve(dims.size());
  for (Index n : dims) cores.emplace_back(1, n, 1);
  return TTVector(std::move(cores));
}

TTVector TTVector::ones(const Dims& dims) {
  TTVector v = zeros(dims);
  for (auto& c : v.cores_) std::fill(c.data().begin(), c.data().end(), 1.0);
  return v;
}

TTVector TTVector::rank_one(const std::vector<Vector>& factors) {
  if (factors.empty()) throw ShapeError("TT vector needs at least one mode");
  std::vector<TTCore> cores;
  cores.reserve(factors.size());
  for (const auto& f : factors) {
    TTCore c(1, f.size(), 1);
    for (Index i = 0; i < f.size(); ++i) c(0, i, 0) = f(i);
    cores.push_back(std::move(c));
  }
  return TTVector(std::move(cores));
}

Dims TTVector::dims() const {
  Dims d;
  d.reserve(cores_.size());
  for (const auto& c : cores_) d.push_back(c.n());
  return d;
}

std::vector<Index> TTVector::ranks() const {
  std::vector<Index> r;
  r.reserve(cores_.size() + 1);
  r.push_back(1);
  for (const auto& c : cores_) r.push_back(c.r1());
  return r;
}

Index TTVector::max_rank() const {
  Index m = 1;
  for (const auto& c : cores_) m = std::max(m, c.r1());
  return m;
}

Index TTVector::storage() const {
  Index s = 0;
  for (const auto& c : cores_) s += c.size();
  return s;
}

DenseTensor::DenseTensor(Dims d) : dims(std::move(d)) {
  data.assign(static_cast<std::size_t>(checked_numel(dims, std::numeric_limits<Index>::max())),
              0.0);
}

void RoundSpec::validate() const {
  if (!(rel_tol >= 0.0) || !std::isfinite(rel_tol)) {
    throw DomainError("rounding tolerance must be finite and nonnegative");
  }
  if (max_rank && *max_rank < 1) throw DomainError("max_rank must be at least 1");
}

Index checked_numel(const Dims& dims, Index cap) {
  if (dims.empty()) throw ShapeError("tensor needs at least one mode");
  Index total = 1;
  for (Index n : dims) {
    if (n < 1) throw ShapeError("mode sizes must be positive");
    if (total > cap / n) throw SizeError("dense size exceeds cap of " + std::to_string(cap));
    total *= n;
  }
  return total;
}

namespace {

void require_same_dims(const TTVector& a, const TTVector& b) {
  if (a.order() != b.order()) throw ShapeError("TT vectors have different orders");
  for (Index k = 0; k < a.order(); ++k) {
    if (a.dim(k) != b.dim(k)) throw ShapeError("TT vectors have different mode sizes");
  }
}

struct ThinSvd {
  Matrix u;
  Vector s;
  Matrix v;
};

// SVD of a (possibly tall) matrix; tall inputs are reduced by QR first.
ThinSvd thin_svd(const Matrix& m) {
  ThinSvd out;
  if (m.rows() > m.cols()) {
    Eigen::HouseholderQR<Matrix> qr(m);
    const Index q = m.cols();
    Matrix r = qr.matrixQR().topRows(q).triangularView<Eigen::Upper>();
    Eigen::BDCSVD<Matrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Matrix u = Matrix::Zero(m.rows(), q);
    u.topRows(q) = svd.matrixU();
    u.applyOnTheLeft(qr.householderQ());
    out.u = std::move(u);
    out.s = svd.singularValues();
    out.v = svd.matrixV();
  } else {
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.u = svd.matrixU();
    out.s = svd.singularValues();
    out.v = svd.matrixV();
  }
  return out;
}

}  // namespace

Index truncation_rank(const Vector& singular_values, double budget,
                      std::optional<Index> max_rank) {
  Index r = std::max<Index>(singular_values.size(), 1);
  const double budget2 = budget * budget;
  double tail2 = 0.0;
  while (r > 1) {
    const double s = singular_values(r - 1);
    const double next = tail2 + s * s;
    if (next > budget2) break;
    tail2 = next;
    --r;
  }
  if (max_rank && r > *max_rank) r = *max_rank;
  return r;
}

TTVector tt_from_dense(const DenseTensor& tensor, const RoundSpec& spec) {
  spec.validate();
  const Index total = checked_numel(tensor.dims, std::numeric_limits<Index>::max());
  if (total != tensor.size()) throw ShapeError("dense payload does not match dims");
  const Index d = static_cast<Index>(tensor.dims.size());
  const double nrm = tensor.vec().norm();
  if (nrm == 0.0) return TTVector::zeros(tensor.dims);
  const double budget = d > 1 ? spec.rel_tol * nrm / std::sqrt(static_cast<double>(d - 1)) : 0.0;

  std::vector<TTCore> cores;
  cores.reserve(d);
  // Row index of `work` is a * n_k + i_k; columns run over the trailing modes.
  Index r_prev = 1;
  Index rest = total;
  Matrix work = ConstMatrixMap(tensor.data.data(), rest, 1).transpose();  // 1 x N
  for (Index k = 0; k + 1 < d; ++k) {
    const Index n = tensor.dims[k];
    rest /= n;
    // Reshape (r_prev) x (n * rest) into (r_prev * n) x rest, row-major on both.
    Matrix m(r_prev * n, rest);
    for (Index a = 0; a < r_prev; ++a)
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < rest; ++j) m(a * n + i, j) = work(a, i * rest + j);
    ThinSvd svd = thin_svd(m);
    const Index r = truncation_rank(svd.s, budget, spec.max_rank);
    TTCore c(r_prev, n, r);
    for (Index a = 0; a < r_prev; ++a)
      for (Index i = 0; i < n; ++i)
        for (Index b = 0; b < r; ++b) c(a, i, b) = svd.u(a * n + i, b);
    cores.push_back(std::move(c));
    work = svd.s.head(r).asDiagonal() * svd.v.leftCols(r).transpose();
    r_prev = r;
  }
  const Index n = tensor.dims[d - 1];
  TTCore last(r_prev, n, 1);
  for (Index a = 0; a < r_prev; ++a)
    for (Index i = 0; i < n; ++i) last(a, i, 0) = work(a, i);
  cores.push_back(std::move(last));
  return TTVector(std::move(cores));
}

DenseTensor tt_to_dense(const TTVector& v, Index cap) {
  const Dims dims = v.dims();
  checked_numel(dims, cap);
  Matrix m = Matrix::Ones(1, 1);
  for (const auto& c : v.cores()) {
    const Index p = m.rows();
    Matrix t = m * c.right();  // p x (n * r1), column i + n * b
    Matrix next(p * c.n(), c.r1());
    for (Index b = 0; b < c.r1(); ++b)
      for (Index q = 0; q < p; ++q)
        for (Index i = 0; i < c.n(); ++i) next(q * c.n() + i, b) = t(q, i + c.n() * b);
    m = std::move(next);
  }
  DenseTensor out(dims);
  for (Index j = 0; j < m.rows(); ++j) out.data[j] = m(j, 0);
  return out;
}

TTVector tt_add(const TTVector& a, const TTVector& b) {
  require_same_dims(a, b);
  const Index d = a.order();
  std::vector<TTCore> cores;
  cores.reserve(d);
  if (d == 1) {
    TTCore c = a.core(0);
    c.left() += b.core(0).left();
    cores.push_back(std::move(c));
    return TTVector(std::move(cores));
  }
  for (Index k = 0; k < d; ++k) {
    const TTCore& ca = a.core(k);
    const TTCore& cb = b.core(k);
    const Index n = ca.n();
    const bool first = k == 0;
    const bool last = k == d - 1;
    const Index r0 = first ? 1 : ca.r0() + cb.r0();
    const Index r1 = last ? 1 : ca.r1() + cb.r1();
    TTCore c(r0, n, r1);
    const Index a0 = first ? 0 : ca.r0();
    const Index a1 = last ? 0 : ca.r1();
    for (Index bb = 0; bb < ca.r1(); ++bb)
      for (Index i = 0; i < n; ++i)
        for (Index aa = 0; aa < ca.r0(); ++aa) c(aa, i, bb) = ca(aa, i, bb);
    for (Index bb = 0; bb < cb.r1(); ++bb)
      for (Index i = 0; i < n; ++i)
        for (Index aa = 0; aa < cb.r0(); ++aa) c(a0 + aa, i, a1 + bb) = cb(aa, i, bb);
    cores.push_back(std::move(c));
  }
  return TTVector(std::move(cores));
}

TTVector tt_scale(const TTVector& a, double alpha) {
  TTVector out = a;
  out.core(out.order() - 1).left() *= alpha;
  return out;
}

TTVector tt_axpby(double alpha, const TTVector& a, double beta, const TTVector& b) {
  return tt_add(tt_scale(a, alpha), tt_scale(b, beta));
}

double tt_dot(const TTVector& a, const TTVector& b) {
  require_same_dims(a, b);
  Matrix m = Matrix::Ones(1, 1);
  for (Index k = 0; k < a.order(); ++k) {
    const TTCore& ca = a.core(k);
    const TTCore& cb = b.core(k);
    Matrix z = m * cb.right();  // ra0 x (n * rb1)
    ConstMatrixMap zl(z.data(), ca.r0() * ca.n(), cb.r1());
    m = ca.left().transpose() * zl;
  }
  return m(0, 0);
}

double tt_norm(const TTVector& a) { return std::sqrt(std::max(0.0, tt_dot(a, a))); }

TTVector tt_round(const TTVector& v, const RoundSpec& spec) {
  spec.validate();
  const Index d = v.order();
  std::vector<TTCore> cores = v.cores();

  for (Index k = d - 1; k > 0; --k) {
    const TTCore& c = cores[k];
    Matrix at = c.right().transpose();  // (n * r1) x r0
    Eigen::HouseholderQR<Matrix> qr(at);
    const Index q = std::min(at.rows(), at.cols());
    Matrix qthin = Matrix::Identity(at.rows(), q);
    qthin.applyOnTheLeft(qr.householderQ());
    Matrix r = qr.matrixQR().topRows(q).triangularView<Eigen::Upper>();
    TTCore& prev = cores[k - 1];
    Matrix left = prev.left() * r.transpose();
    const Index n = c.n();
    const Index r1 = c.r1();
    cores[k] = TTCore::from_right(qthin.transpose(), n, r1);
    cores[k - 1] = TTCore::from_left(left, prev.r0(), prev.n());
  }

  const double nrm = cores[0].left().norm();
  if (nrm == 0.0 || !std::isfinite(nrm)) {
    if (nrm == 0.0) return TTVector::zeros(v.dims());
    throw DomainError("cannot round a TT vector with non-finite entries");
  }
  if (d == 1) return TTVector(std::move(cores));

  const double budget = spec.rel_tol * nrm / std::sqrt(static_cast<double>(d - 1));
  for (Index k = 0; k + 1 < d; ++k) {
    const TTCore& c = cores[k];
    ThinSvd svd = thin_svd(Matrix(c.left()));
    const Index r = truncation_rank(svd.s, budget, spec.max_rank);
    Matrix carry = svd.s.head(r).asDiagonal() * svd.v.leftCols(r).transpose();  // r x r1
    TTCore& next = cores[k + 1];
    Matrix next_right = carry * next.right();
    const Index n_next = next.n();
    const Index r_next = next.r1();
    cores[k] = TTCore::from_left(svd.u.leftCols(r), c.r0(), c.n());
    cores[k + 1] = TTCore::from_right(next_right, n_next, r_next);
  }
  return TTVector(std::move(cores));
}

TTCore mode_multiply(const TTCore& c, const Matrix& m) {
  if (m.cols() != c.n()) throw ShapeError("mode multiplication: matrix columns != mode size");
  TTCore out(c.r0(), m.rows(), c.r1());
  const Index n = c.n();
  const Index mr = m.rows();
  for (Index b = 0; b < c.r1(); ++b) {
    out.right().middleCols(b * mr, mr).noalias() =
        c.right().middleCols(b * n, n) * m.transpose();
  }
  return out;
}

TTVector mode_multiply(const TTVector& v, Index k, const Matrix& m) {
  if (k < 0 || k >= v.order()) throw ShapeError("mode index out of range");
  TTVector out = v;
  out.core(k) = mode_multiply(v.core(k), m);
  return out;
}

}  // namespace ttk
