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

#include "ttk/sketch.hpp"

#include <cmath>

#include "ttk/random.hpp"

namespace ttk {

Dims KhatriRaoSketch::dims() const {
  Dims d;
  for (const auto& f : factors) d.push_back(f.cols());
  return d;
}

KhatriRaoSketch kr_sketch_new(const Dims& dims, Index rows, std::uint64_t seed) {
  if (rows < 1) throw DomainError("sketch needs at least one row");
  if (dims.empty()) throw ShapeError("sketch needs at least one mode");
  KhatriRaoSketch s;
  s.rows = rows;
  s.seed = seed;
  const double d = static_cast<double>(dims.size());
  const double sd = std::pow(static_cast<double>(rows), -0.5 / d);
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] < 1) throw ShapeError("mode sizes must be positive");
    NormalStream rng(seed, 0x5e7c000000000000ULL + k);
    Matrix f(rows, dims[k]);
    // Fill row by row so a prefix of rows is stable under growing s.
    for (Index j = 0; j < rows; ++j)
      for (Index i = 0; i < dims[k]; ++i) f(j, i) = rng(sd);
    s.factors.push_back(std::move(f));
  }
  return s;
}

Vector kr_apply(const KhatriRaoSketch& sketch, const TTVector& v) {
  if (sketch.order() != v.order()) throw ShapeError("sketch and vector orders differ");
  const Index s = sketch.rows;
  // state(j, :) is the running 1 x r_k row for sketch row j.
  Matrix state = Matrix::Ones(s, 1);
  for (Index k = 0; k < v.order(); ++k) {
    const TTCore& c = v.core(k);
    const Matrix& f = sketch.factors[k];
    if (f.cols() != c.n()) throw ShapeError("sketch and vector mode sizes differ");
    Matrix t = state * c.right();  // s x (n * r1), column i + n * b
    Matrix next = Matrix::Zero(s, c.r1());
    for (Index b = 0; b < c.r1(); ++b) {
      next.col(b) = (t.middleCols(b * c.n(), c.n()).array() * f.array()).rowwise().sum();
    }
    state = std::move(next);
  }
  return state.col(0);
}

Matrix kr_dense(const KhatriRaoSketch& sketch, Index cap) {
  const Dims dims = sketch.dims();
  const Index total = checked_numel(dims, cap);
  Matrix out(sketch.rows, total);
  for (Index j = 0; j < sketch.rows; ++j) {
    Vector row = Vector::Ones(1);
    for (const auto& f : sketch.factors) {
      Vector next(row.size() * f.cols());
      for (Index p = 0; p < row.size(); ++p)
        for (Index i = 0; i < f.cols(); ++i) next(p * f.cols() + i) = row(p) * f(j, i);
      row = std::move(next);
    }
    out.row(j) = row.transpose();
  }
  return out;
}

TTVector kron_sketch_apply(const std::vector<Matrix>& factors, const TTVector& v) {
  if (static_cast<Index>(factors.size()) != v.order()) {
    throw ShapeError("need one sketch factor per mode");
  }
  std::vector<TTCore> cores;
  cores.reserve(factors.size());
  for (Index k = 0; k < v.order(); ++k) cores.push_back(mode_multiply(v.core(k), factors[k]));
  return TTVector(std::move(cores));
}

}  // namespace ttk
