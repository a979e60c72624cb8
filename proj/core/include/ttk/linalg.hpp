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

#include "ttk/tt_vector.hpp"

namespace ttk {

/// Truncated-SVD pseudo-inverse solve: pinv(a) * b, discarding singular
/// values at or below rcond * sigma_max.
Matrix pinv_solve(const Matrix& a, const Matrix& b, double rcond = 1e-12);

/// Truncated-SVD pseudo-inverse.
Matrix pinv(const Matrix& a, double rcond = 1e-12);

}  // namespace ttk
