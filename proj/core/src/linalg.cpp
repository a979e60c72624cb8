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

#include "ttk/linalg.hpp"

#include <Eigen/SVD>

namespace ttk {

Matrix pinv_solve(const Matrix& a, const Matrix& b, double rcond) {
  if (a.rows() != b.rows()) throw ShapeError("pinv_solve: row counts differ");
  if (a.size() == 0) return Matrix::Zero(a.cols(), b.cols());
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? rcond * s(0) : 0.0;
  Index k = 0;
  while (k < s.size() && s(k) > cutoff) ++k;
  if (k == 0) return Matrix::Zero(a.cols(), b.cols());
  Matrix coeff = svd.matrixU().leftCols(k).transpose() * b;
  coeff = s.head(k).cwiseInverse().asDiagonal() * coeff;
  return svd.matrixV().leftCols(k) * coeff;
}

Matrix pinv(const Matrix& a, double rcond) {
  return pinv_solve(a, Matrix::Identity(a.rows(), a.rows()), rcond);
}

}  // namespace ttk
