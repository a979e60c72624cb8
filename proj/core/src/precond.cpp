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

#include "ttk/precond.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <unsupported/Eigen/MatrixFunctions>

#include "ttk/random.hpp"

namespace ttk {

namespace {

Vector log_grid(double lo, double hi, Index count) {
  Vector z(count);
  if (count == 1 || lo == hi) {
    z.setConstant(lo);
    return z;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (Index i = 0; i < count; ++i) {
    z(i) = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return z;
}

struct Fit {
  Vector a;
  Vector b;
  double err = std::numeric_limits<double>::infinity();
};

// Nodes b_j = exp(s_lo + j h); weights by least squares on z E(z) = 1, or the
// plain trapezoid weights when that is more accurate.
Fit fit_nodes(const Vector& z, double s_lo, double h, Index zeta) {
  Fit f;
  f.b.resize(zeta);
  for (Index j = 0; j < zeta; ++j) f.b(j) = std::exp(s_lo + h * static_cast<double>(j));
  Matrix m(z.size(), zeta);
  for (Index j = 0; j < zeta; ++j) {
    m.col(j) = z.array() * (-f.b(j) * z.array()).exp();
  }
  const Vector ones = Vector::Ones(z.size());

  Vector plain = h * f.b;
  const double plain_err = (m * plain - ones).cwiseAbs().maxCoeff();

  Vector ls = m.colPivHouseholderQr().solve(ones);
  const double ls_err = ls.allFinite() ? (m * ls - ones).cwiseAbs().maxCoeff()
                                       : std::numeric_limits<double>::infinity();
  if (ls_err < plain_err) {
    f.a = std::move(ls);
    f.err = ls_err;
  } else {
    f.a = std::move(plain);
    f.err = plain_err;
  }
  return f;
}

Fit search(const Vector& z, Index zeta, double h_lo, double h_hi, Index h_steps,
           double s_lo, double s_hi, Index s_steps) {
  Fit best;
  for (Index ih = 0; ih < h_steps; ++ih) {
    const double h =
        h_steps == 1 ? h_lo
                     : h_lo * std::pow(h_hi / h_lo, static_cast<double>(ih) / (h_steps - 1));
    for (Index is = 0; is < s_steps; ++is) {
      const double s =
          s_steps == 1 ? s_lo : s_lo + (s_hi - s_lo) * static_cast<double>(is) / (s_steps - 1);
      Fit f = fit_nodes(z, s, h, zeta);
      if (f.err < best.err) best = std::move(f);
    }
  }
  return best;
}

}  // namespace

double ExpSum::operator()(double z) const {
  double acc = 0.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) acc += alpha[j] * std::exp(-beta[j] * z);
  return acc;
}

double expsum_error(const ExpSum& e, double lo, double hi, Index samples) {
  const Vector z = log_grid(lo, hi, samples);
  double worst = 0.0;
  for (Index i = 0; i < z.size(); ++i) worst = std::max(worst, std::abs(z(i) * e(z(i)) - 1.0));
  return worst;
}

ExpSum expsum_coeffs(double lambda_min, double lambda_max, Index zeta) {
  if (!(lambda_min > 0.0) || !std::isfinite(lambda_max)) {
    throw DomainError("expsum_coeffs: lambda_min must be positive");
  }
  if (lambda_max < lambda_min) throw DomainError("expsum_coeffs: empty interval");
  if (zeta < 1) throw DomainError("expsum_coeffs: zeta must be positive");

  // Fit on [1, kappa] and rescale.
  const double kappa = lambda_max / lambda_min;
  const double lk = std::log(kappa);
  const Vector coarse = log_grid(1.0, kappa, 200);
  Fit best = search(coarse, zeta, 0.05, 4.0, 40, -lk - 8.0, 1.0,
                    std::max<Index>(40, static_cast<Index>(4.0 * (lk + 9.0))));

  const double h0 = (best.b.size() > 1) ? std::log(best.b(1) / best.b(0)) : 1.0;
  const double s0 = std::log(best.b(0));
  const Vector fine = log_grid(1.0, kappa, 1000);
  best = search(fine, zeta, h0 * 0.9, h0 * 1.1, 9, s0 - 0.25, s0 + 0.25, 11);

  ExpSum out;
  out.lambda_min = lambda_min;
  out.lambda_max = lambda_max;
  for (Index j = 0; j < zeta; ++j) {
    out.alpha.push_back(best.a(j) / lambda_min);
    out.beta.push_back(best.b(j) / lambda_min);
  }
  out.max_rel_error = expsum_error(out, lambda_min, lambda_max);
  return out;
}

Matrix matrix_exp(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("matrix_exp: matrix must be square");
  if (!m.allFinite()) throw DomainError("matrix_exp: non-finite entries");
  if (m.size() == 0) return m;
  return m.exp();
}

SpectralInterval spectral_interval(const std::vector<Matrix>& factors) {
  SpectralInterval out;
  for (const auto& f : factors) {
    if (f.rows() != f.cols()) throw ShapeError("spectral_interval: factors must be square");
    const Matrix sym = 0.5 * (f + f.transpose());
    double upper = -std::numeric_limits<double>::infinity();
    for (Index r = 0; r < sym.rows(); ++r) {
      const double radius = sym.row(r).cwiseAbs().sum() - std::abs(sym(r, r));
      upper = std::max(upper, sym(r, r) + radius);
    }
    out.lambda_max += upper;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
    out.lambda_min += eig.eigenvalues()(0);
  }
  out.lambda_min = std::max(out.lambda_min, 1e-8 * out.lambda_max);
  return out;
}

ExpSumPreconditioner::ExpSumPreconditioner(std::vector<Matrix> factors, std::vector<double> alpha,
                                           std::vector<double> beta, ExpSumOptions options)
    : factors_(std::move(factors)),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      options_(std::move(options)) {
  if (factors_.empty()) throw ShapeError("preconditioner needs at least one factor");
  if (alpha_.empty() || alpha_.size() != beta_.size()) {
    throw ShapeError("preconditioner needs matching, non-empty alpha and beta");
  }
  for (double b : beta_) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("beta must be finite and >= 0");
  }
  options_.round.validate();
  exps_.resize(alpha_.size());
  for (std::size_t j = 0; j < alpha_.size(); ++j) {
    for (const auto& f : factors_) {
      if (f.rows() != f.cols()) throw ShapeError("preconditioner factors must be square");
      exps_[j].push_back(matrix_exp(-beta_[j] * f));
    }
  }
}

ExpSumPreconditioner ExpSumPreconditioner::build(std::vector<Matrix> factors, Index zeta,
                                                 ExpSumOptions options) {
  const SpectralInterval iv = spectral_interval(factors);
  ExpSum e = expsum_coeffs(iv.lambda_min, iv.lambda_max, zeta);
  ExpSumPreconditioner p(std::move(factors), std::move(e.alpha), std::move(e.beta),
                         std::move(options));
  p.fit_error_ = e.max_rel_error;
  p.interval_ = iv;
  return p;
}

Dims ExpSumPreconditioner::dims() const {
  Dims d;
  for (const auto& f : factors_) d.push_back(f.rows());
  return d;
}

TTVector ExpSumPreconditioner::term(const TTVector& v, Index j) const {
  std::vector<TTCore> cores;
  cores.reserve(v.order());
  for (Index i = 0; i < v.order(); ++i) cores.push_back(mode_multiply(v.core(i), exps_[j][i]));
  return tt_scale(TTVector(std::move(cores)), alpha_[j]);
}

const StreamFrame& ExpSumPreconditioner::frame(Index rank) const {
  if (!frame_ || frame_rank_ != rank) {
    const Dims n = dims();
    frame_ = make_frame(n, std::vector<Index>(n.size() - 1, rank), options_.oversampling,
                        mix_seed(options_.seed ^ 0x5045ULL));
    frame_rank_ = rank;
  }
  return *frame_;
}

TTVector ExpSumPreconditioner::apply_exact(const TTVector& v) const {
  if (v.dims() != dims()) throw ShapeError("preconditioner and vector dims differ");
  TTVector acc = term(v, 0);
  for (Index j = 1; j < terms(); ++j) acc = tt_add(acc, term(v, j));
  return acc;
}

TTVector ExpSumPreconditioner::apply_inverse(const TTVector& v) const {
  if (v.dims() != dims()) throw ShapeError("preconditioner and vector dims differ");
  const RoundSpec& spec = options_.round;
  if (options_.accumulation == Accumulation::kSequential) {
    TTVector acc = tt_round(term(v, 0), spec);
    for (Index j = 1; j < terms(); ++j) acc = tt_round(tt_add(acc, term(v, j)), spec);
    return acc;
  }
  Index rank = options_.frame_rank;
  if (rank == 0) rank = spec.max_rank.value_or(ExpSumOptions::kUncappedFrameRank);
  const Index d = v.order();
  if (d == 1) return tt_round(apply_exact(v), spec);
  const StreamFrame& frame = this->frame(rank);
  SketchPair acc = stta_sketch(term(v, 0), frame);
  for (Index j = 1; j < terms(); ++j) sketch_axpy(acc, 1.0, stta_sketch(term(v, j), frame));
  return stta_recover(acc, spec);
}

}  // namespace ttk
