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
#include <vector>

#include "ttk/tt_vector.hpp"

namespace ttk {

/// Khatri-Rao structured Gaussian embedding with s rows.
///
/// Row j of the (implicit) s x prod(n_k) matrix is the Kronecker product of
/// row j of every factor. Factor entries have variance s^(-1/d), so each
/// entry of the implicit matrix has variance 1/s and E||Sv||^2 = ||v||^2.
struct KhatriRaoSketch {
  Index rows = 0;
  std::vector<Matrix> factors;  // s x n_k each
  std::uint64_t seed = 0;

  Index order() const { return static_cast<Index>(factors.size()); }
  Dims dims() const;
};

/// Sketch rows used when none are configured: twice the iteration budget.
inline Index default_sketch_rows(Index maxit) { return 2 * maxit; }

KhatriRaoSketch kr_sketch_new(const Dims& dims, Index rows, std::uint64_t seed);

/// S v, evaluated row-by-row through the core chain without densifying.
Vector kr_apply(const KhatriRaoSketch& sketch, const TTVector& v);

/// Explicit s x prod(n_k) matrix; test support only.
Matrix kr_dense(const KhatriRaoSketch& sketch, Index cap = kDefaultDenseCap);

/// Kronecker-product sketch (S_1 (x) ... (x) S_d) v as a TT vector with the
/// input's ranks. Reference path for tests.
TTVector kron_sketch_apply(const std::vector<Matrix>& factors, const TTVector& v);

}  // namespace ttk
