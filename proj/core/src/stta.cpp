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

#include "ttk/stta.hpp"

#include <algorithm>
#include <limits>

#include "ttk/linalg.hpp"
#include "ttk/random.hpp"

namespace ttk {

TTVector ttdrm_new(const Dims& dims, const std::vector<Index>& ranks, std::uint64_t seed) {
  return random_gaussian_tt(dims, ranks, seed);
}

std::vector<Index> StreamFrame::recovery_ranks() const {
  auto r = right.ranks();
  return {r.begin() + 1, r.end() - 1};
}

std::vector<Index> StreamFrame::left_ranks() const {
  auto r = left.ranks();
  return {r.begin() + 1, r.end() - 1};
}

std::vector<Index> max_unfolding_ranks(const Dims& dims) {
  const std::size_t d = dims.size();
  std::vector<Index> out;
  if (d < 2) return out;
  constexpr Index kBig = std::numeric_limits<Index>::max() / 4;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    Index lhs = 1, rhs = 1;
    for (std::size_t j = 0; j <= k; ++j) lhs = std::min(kBig, lhs * dims[j]);
    for (std::size_t j = k + 1; j < d; ++j) rhs = std::min(kBig, rhs * dims[j]);
    out.push_back(std::min(lhs, rhs));
  }
  return out;
}

StreamFrame make_frame(const Dims& dims, std::vector<Index> recovery_ranks, Index oversampling,
                       std::uint64_t seed) {
  if (recovery_ranks.size() + 1 != dims.size()) throw ShapeError("need d-1 recovery ranks");
  if (oversampling < 1) throw DomainError("oversampling must be at least 1");
  const auto cap = max_unfolding_ranks(dims);
  std::vector<Index> left(recovery_ranks.size());
  for (std::size_t k = 0; k < recovery_ranks.size(); ++k) {
    if (recovery_ranks[k] < 1) throw DomainError("recovery ranks must be positive");
    recovery_ranks[k] = std::min(recovery_ranks[k], cap[k]);
    left[k] = recovery_ranks[k] + oversampling;
  }
  StreamFrame f;
  f.right = ttdrm_new(dims, recovery_ranks, mix_seed(seed) ^ 0x52u);
  f.left = ttdrm_new(dims, left, mix_seed(seed) ^ 0x4cu);
  return f;
}

bool SketchPair::same_shape(const SketchPair& other) const {
  if (psi.size() != other.psi.size() || omega.size() != other.omega.size()) return false;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    if (psi[k].rows() != other.psi[k].rows() || psi[k].cols() != other.psi[k].cols()) return false;
  }
  for (std::size_t k = 0; k < omega.size(); ++k) {
    if (omega[k].rows() != other.omega[k].rows() || omega[k].cols() != other.omega[k].cols())
      return false;
  }
  return true;
}

bool SketchPair::is_zero() const {
  for (const auto& m : psi)
    if (!m.isZero(0.0)) return false;
  for (const auto& m : omega)
    if (!m.isZero(0.0)) return false;
  return true;
}

SketchPair SketchPair::zeros_like() const {
  SketchPair z;
  for (const auto& m : psi) z.psi.push_back(Matrix::Zero(m.rows(), m.cols()));
  for (const auto& m : omega) z.omega.push_back(Matrix::Zero(m.rows(), m.cols()));
  return z;
}

SketchPair stta_sketch(const TTVector& t, const StreamFrame& frame) {
  const Index d = t.order();
  if (frame.right.order() != d || frame.dims() != t.dims()) {
    throw ShapeError("tensor and stream frame have different dims");
  }
  const TTVector& x = frame.right;
  const TTVector& y = frame.left;

  // left[k] = Y_{<k}^T C_{<k} (l_k x t_k), right[k] = C_{>=k}^T X_{>=k} (t_k x r_k).
  std::vector<Matrix> left(d);
  std::vector<Matrix> right(d + 1);
  left[0] = Matrix::Ones(1, 1);
  for (Index k = 0; k + 1 < d; ++k) {
    const TTCore& c = t.core(k);
    Matrix tmp = left[k] * c.right();
    ConstMatrixMap tl(tmp.data(), left[k].rows() * c.n(), c.r1());
    left[k + 1] = y.core(k).left().transpose() * tl;
  }
  right[d] = Matrix::Ones(1, 1);
  for (Index k = d - 1; k >= 1; --k) {
    const TTCore& c = t.core(k);
    Matrix tmp = c.left() * right[k + 1];
    ConstMatrixMap tr(tmp.data(), c.r0(), c.n() * right[k + 1].cols());
    right[k] = tr * x.core(k).right().transpose();
  }

  SketchPair p;
  p.psi.resize(d);
  p.omega.resize(d - 1);
  for (Index k = 0; k < d; ++k) {
    const TTCore& c = t.core(k);
    Matrix tmp = left[k] * c.right();
    ConstMatrixMap tl(tmp.data(), left[k].rows() * c.n(), c.r1());
    p.psi[k] = tl * right[k + 1];
  }
  for (Index k = 0; k + 1 < d; ++k) p.omega[k] = left[k + 1] * right[k + 1];
  return p;
}

void sketch_axpy(SketchPair& y, double alpha, const SketchPair& x) {
  if (!y.same_shape(x)) throw ShapeError("sketch pairs come from different frames");
  for (std::size_t k = 0; k < y.psi.size(); ++k) y.psi[k] += alpha * x.psi[k];
  for (std::size_t k = 0; k < y.omega.size(); ++k) y.omega[k] += alpha * x.omega[k];
}

SketchPair sketchpair_combine(std::span<const SketchPair> pairs, std::span<const double> coeffs) {
  if (pairs.empty()) throw ShapeError("nothing to combine");
  if (pairs.size() != coeffs.size()) throw ShapeError("one coefficient per sketch pair");
  SketchPair out = pairs[0].zeros_like();
  for (std::size_t i = 0; i < pairs.size(); ++i) sketch_axpy(out, coeffs[i], pairs[i]);
  return out;
}

TTVector stta_recover(const SketchPair& pair, const RoundSpec& spec, double rcond) {
  spec.validate();
  const Index d = static_cast<Index>(pair.psi.size());
  if (d == 0 || static_cast<Index>(pair.omega.size()) != d - 1) {
    throw ShapeError("malformed sketch pair");
  }
  Dims dims(d);
  for (Index k = 0; k < d; ++k) {
    const Index l = k == 0 ? 1 : pair.omega[k - 1].rows();
    if (pair.psi[k].rows() % l != 0) throw ShapeError("malformed sketch pair");
    dims[k] = pair.psi[k].rows() / l;
  }
  if (pair.is_zero()) return TTVector::zeros(dims);
  for (const auto& om : pair.omega) {
    if (om.isZero(0.0)) throw DegenerateRecoveryError("Omega sketch is identically zero");
  }

  std::vector<TTCore> cores;
  cores.reserve(d);
  for (Index k = 0; k < d; ++k) {
    const Matrix& psi = pair.psi[k];
    const Index n = dims[k];
    const Index l = k == 0 ? 1 : pair.omega[k - 1].rows();
    const Index r1 = psi.cols();
    ConstMatrixMap psi_right(psi.data(), l, n * r1);
    if (k == 0) {
      cores.push_back(TTCore::from_right(Matrix(psi_right), n, r1));
    } else {
      cores.push_back(TTCore::from_right(pinv_solve(pair.omega[k - 1], psi_right, rcond), n, r1));
    }
  }
  return tt_round(TTVector(std::move(cores)), spec);
}

}  // namespace ttk
