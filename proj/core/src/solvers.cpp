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

#include "ttk/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <sstream>

#include <Eigen/SVD>

#include "ttk/random.hpp"

namespace ttk {

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  double lap() {
    const auto now = Clock::now();
    const double dt = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return dt;
  }

 private:
  Clock::time_point last_ = Clock::now();
};

constexpr double kBreakdown = 1e-14;
constexpr double kIllConditioned = 1e-10;

void check_system(const TTOperator& a, const TTVector& b, const TTVector& x0) {
  if (a.row_dims() != a.col_dims()) throw ShapeError("operator must be square");
  if (a.row_dims() != b.dims()) throw ShapeError("operator and right-hand side dims differ");
  if (x0.dims() != b.dims()) throw ShapeError("initial guess and right-hand side dims differ");
}

// r0 = b - A x0, skipping the matvec for a zero start.
TTVector initial_residual(const TTOperator& a, const TTVector& b, const TTVector& x0,
                          bool x0_nonzero, const RoundSpec& spec) {
  if (!x0_nonzero) return b;
  return tt_round(tt_axpby(1.0, b, -1.0, tt_matvec(a, x0)), spec);
}

// Sequential rounded additions x0 + sum_i y_i v_i.
TTVector accumulate(const TTVector& x0, const std::vector<TTVector>& basis, const Vector& y,
                    double tol) {
  TTVector x = x0;
  for (Index i = 0; i < y.size(); ++i) {
    x = tt_round(tt_axpby(1.0, x, y(i), basis[i]), RoundSpec{tol, std::nullopt});
  }
  return x;
}

void note_resident(SolveReport& report, const SolverConfig& cfg, Index count) {
  report.peak_resident_basis = std::max(report.peak_resident_basis, count);
  if (cfg.audit) cfg.audit(count);
}

}  // namespace

void SolverConfig::validate() const {
  if (maxit < 1) throw DomainError("maxit must be positive");
  if (!(tol > 0.0 && tol < 1.0)) throw DomainError("tol must lie in (0, 1)");
  if (window < 1) throw DomainError("window must be at least 1");
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("eta must lie in (0, 1]");
  if (max_rank && *max_rank < 1) throw DomainError("max_rank must be positive");
  if (rows() <= maxit) throw DomainError("sketch_rows must exceed maxit");
  if (oversampling < 1) throw DomainError("oversampling must be positive");
  if (solution_rank && *solution_rank < 1) throw DomainError("solution_rank must be positive");
}

PhaseTimes& PhaseTimes::operator+=(const PhaseTimes& o) {
  matvec += o.matvec;
  sketch += o.sketch;
  orth += o.orth;
  round += o.round;
  lsq += o.lsq;
  return *this;
}

Index SolveReport::peak_rank() const {
  Index r = 0;
  for (const auto& h : history) r = std::max(r, h.max_rank);
  return r;
}

double SolveReport::final_sketched() const {
  return history.empty() ? 1.0 : history.back().res_sketched;
}

std::optional<double> SolveReport::final_true() const {
  if (history.empty()) return std::nullopt;
  return history.back().res_true;
}

LsqResult sketched_lsq(const Matrix& w, const Vector& rhs) {
  if (w.rows() != rhs.size()) throw ShapeError("sketched_lsq: row mismatch");
  if (w.rows() < w.cols()) throw ShapeError("sketched_lsq: need at least as many rows as columns");
  LsqResult out;
  out.y = Vector::Zero(w.cols());
  if (w.cols() == 0) {
    out.residual = rhs.norm();
    return out;
  }
  Eigen::BDCSVD<Matrix> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  if (s(0) == 0.0) {
    out.residual = rhs.norm();
    out.conditioning = 0.0;
    return out;
  }
  Index k = 0;
  while (k < s.size() && s(k) > 1e-12 * s(0)) ++k;
  Vector c = svd.matrixU().leftCols(k).transpose() * rhs;
  out.y = svd.matrixV().leftCols(k) * s.head(k).cwiseInverse().cwiseProduct(c);
  out.residual = (w * out.y - rhs).norm();
  out.conditioning = s(s.size() - 1) / s(0);
  return out;
}

double true_residual(const TTOperator& a, const TTVector& b, const TTVector& x) {
  const double nb = tt_norm(b);
  if (nb == 0.0) return 0.0;
  TTVector r = tt_round(tt_axpby(1.0, b, -1.0, tt_matvec(a, x)), RoundSpec{1e-12, std::nullopt});
  return tt_norm(r) / nb;
}

KhatriRaoSketch make_sketch(const SolverConfig& cfg, const Dims& dims) {
  return kr_sketch_new(dims, cfg.rows(), mix_seed(cfg.seed ^ 0x534b45544348ULL));
}

StreamFrame make_frame(const SolverConfig& cfg, const TTVector& b) {
  constexpr Index kDefaultFrameRank = 50;
  const Index d = b.order();
  std::vector<Index> ranks = cfg.frame_ranks;
  if (ranks.empty()) {
    const auto rb = b.ranks();
    const Index base = cfg.solution_rank ? 2 * *cfg.solution_rank : kDefaultFrameRank;
    for (Index k = 1; k < d; ++k) ranks.push_back(std::max(rb[k], base));
  } else if (static_cast<Index>(ranks.size()) == 1 && d > 2) {
    ranks.assign(d - 1, ranks.front());
  }
  return make_frame(b.dims(), ranks, cfg.oversampling, mix_seed(cfg.seed ^ 0x4652414d45ULL));
}

SolveResult tt_gmres(const TTOperator& a, const TTVector& b, const TTVector& x0,
                     const SolverConfig& cfg) {
  cfg.validate();
  check_system(a, b, x0);
  Stopwatch wall;
  SolveResult out;
  SolveReport& report = out.report;
  report.seed = cfg.seed;

  const double nb = tt_norm(b);
  const bool x0_nonzero = tt_norm(x0) > 0.0;
  TTVector r0 = initial_residual(a, b, x0, x0_nonzero, RoundSpec{cfg.tol * cfg.tol, std::nullopt});
  const double beta = tt_norm(r0);
  if (beta == 0.0 || nb == 0.0) {
    out.x = x0;
    report.converged = true;
    report.wall_time = wall.lap();
    return out;
  }

  std::vector<TTVector> basis;
  basis.push_back(tt_scale(r0, 1.0 / beta));
  note_resident(report, cfg, 1);

  const Index m = cfg.maxit;
  Matrix h = Matrix::Zero(m + 1, m);
  Vector cs = Vector::Zero(m);
  Vector sn = Vector::Zero(m);
  Vector g = Vector::Zero(m + 1);
  g(0) = beta;
  Vector y;
  double relres = beta / nb;

  for (Index k = 0; k < m; ++k) {
    IterationRecord rec;
    Stopwatch sw;
    const double eta_k = std::clamp(cfg.tol / relres, 1e-14, 1.0);
    const RoundSpec spec{eta_k * cfg.tol, cfg.max_rank};

    TTVector av = tt_matvec(a, basis[k]);
    rec.times.matvec = sw.lap();
    TTVector vt = tt_round(av, spec);
    rec.times.round = sw.lap();
    const double norm_av = tt_norm(vt);
    for (Index i = 0; i <= k; ++i) {
      h(i, k) = tt_dot(vt, basis[i]);
      vt = tt_axpby(1.0, vt, -h(i, k), basis[i]);
      rec.times.orth += sw.lap();
      vt = tt_round(vt, spec);
      rec.times.round += sw.lap();
    }
    const double hn = tt_norm(vt);
    h(k + 1, k) = hn;
    rec.times.orth += sw.lap();

    for (Index i = 0; i < k; ++i) {
      const double t = cs(i) * h(i, k) + sn(i) * h(i + 1, k);
      h(i + 1, k) = -sn(i) * h(i, k) + cs(i) * h(i + 1, k);
      h(i, k) = t;
    }
    const double rho = std::hypot(h(k, k), h(k + 1, k));
    cs(k) = rho == 0.0 ? 1.0 : h(k, k) / rho;
    sn(k) = rho == 0.0 ? 0.0 : h(k + 1, k) / rho;
    h(k, k) = rho;
    h(k + 1, k) = 0.0;
    g(k + 1) = -sn(k) * g(k);
    g(k) = cs(k) * g(k);
    y = h.topLeftCorner(k + 1, k + 1).triangularView<Eigen::Upper>().solve(g.head(k + 1));
    relres = std::abs(g(k + 1)) / nb;
    rec.times.lsq = sw.lap();

    rec.res_sketched = relres;
    rec.max_rank = vt.max_rank();
    const bool breakdown = hn <= kBreakdown * norm_av;
    if (!breakdown) {
      basis.push_back(tt_scale(vt, 1.0 / hn));
      note_resident(report, cfg, static_cast<Index>(basis.size()));
    }
    if (cfg.track_true_residual) {
      rec.res_true = true_residual(a, b, accumulate(x0, basis, y, cfg.tol));
    }
    report.totals += rec.times;
    report.history.push_back(rec);
    report.iterations = k + 1;
    if (relres <= cfg.tol && !cfg.force_iterations) {
      report.converged = true;
      break;
    }
    if (breakdown) {
      report.converged = relres <= cfg.tol;
      break;
    }
  }
  if (!report.converged && relres <= cfg.tol) report.converged = true;

  Stopwatch rsw;
  out.x = accumulate(x0, basis, y, cfg.tol);
  report.recovery_time = rsw.lap();
  report.wall_time = wall.lap();
  return out;
}

namespace {

enum class Variant { kVanilla, kEnhanced };

SolveResult sketched_gmres(const TTOperator& a, const Preconditioner* p, const TTVector& b,
                           const TTVector& x0, const SolverConfig& cfg, const KhatriRaoSketch& s,
                           const StreamFrame* frame, Variant variant) {
  cfg.validate();
  check_system(a, b, x0);
  if (s.dims() != b.dims()) throw ShapeError("sketch dims differ from the system");
  if (s.rows <= cfg.maxit) throw DomainError("sketch needs more rows than maxit");
  const bool enhanced = variant == Variant::kEnhanced;
  if (enhanced && (frame == nullptr || frame->dims() != b.dims())) {
    throw ShapeError("stream frame dims differ from the system");
  }
  if (!enhanced && cfg.combine_mode == CombineMode::kStta) {
    throw DomainError("the vanilla solver orthogonalizes explicitly");
  }

  Stopwatch wall;
  SolveResult out;
  SolveReport& report = out.report;
  report.seed = cfg.seed;

  const RoundSpec basis_spec{cfg.eta * cfg.tol, cfg.max_rank};
  const RoundSpec solution_spec{cfg.tol, cfg.solution_rank};
  const bool x0_nonzero = tt_norm(x0) > 0.0;
  TTVector r0 = initial_residual(a, b, x0, x0_nonzero, RoundSpec{cfg.eta * cfg.tol, std::nullopt});
  const double beta = tt_norm(r0);
  const double sb = kr_apply(s, b).norm();
  if (beta == 0.0 || sb == 0.0) {
    out.x = x0;
    report.converged = true;
    report.wall_time = wall.lap();
    return out;
  }
  const Vector sr0 = kr_apply(s, r0);

  // Enhanced: sliding window plus one sketch pair per basis vector.
  // Vanilla: the whole basis.
  // Preconditioned runs also keep the pair of each z_k = P^{-1} v_k.
  std::deque<TTVector> window;
  std::vector<TTVector> basis;
  std::vector<SketchPair> pairs;
  std::vector<SketchPair> zpairs;
  std::optional<SketchPair> x0_pair;

  TTVector v = tt_scale(r0, 1.0 / beta);
  if (enhanced) {
    pairs.push_back(stta_sketch(v, *frame));
    if (x0_nonzero) x0_pair = stta_sketch(x0, *frame);
    window.push_back(std::move(v));
    note_resident(report, cfg, 1);
  } else {
    basis.push_back(std::move(v));
    note_resident(report, cfg, 1);
  }

  auto solution = [&](const Vector& y) -> TTVector {
    if (!enhanced) return accumulate(x0, basis, y, cfg.tol);
    const auto& src = p == nullptr ? pairs : zpairs;
    std::vector<SketchPair> used(src.begin(), src.begin() + y.size());
    std::vector<double> coeffs(y.data(), y.data() + y.size());
    if (x0_pair) {
      used.push_back(*x0_pair);
      coeffs.push_back(1.0);
    }
    return stta_recover(sketchpair_combine(used, coeffs), solution_spec);
  };

  const Index m = cfg.maxit;
  Matrix w(s.rows, m);
  Vector y;
  double relres = 1.0;
  bool warned = false;

  for (Index k = 0; k < m; ++k) {
    IterationRecord rec;
    Stopwatch sw;
    const TTVector& vk = enhanced ? window.back() : basis.back();

    TTVector av;
    if (p == nullptr) {
      av = tt_matvec(a, vk);
      rec.times.matvec = sw.lap();
    } else {
      TTVector z = p->apply_inverse(vk);
      av = tt_matvec(a, z);
      rec.times.matvec = sw.lap();
      zpairs.push_back(stta_sketch(z, *frame));
      rec.times.sketch += sw.lap();
    }
    w.col(k) = kr_apply(s, av);
    rec.times.sketch += sw.lap();
    const double norm_av = tt_norm(av);

    TTVector vt;
    if (enhanced && cfg.combine_mode == CombineMode::kStta) {
      const Index first = static_cast<Index>(pairs.size()) - static_cast<Index>(window.size());
      SketchPair acc = stta_sketch(av, *frame);
      rec.times.sketch += sw.lap();
      for (std::size_t i = 0; i < window.size(); ++i) {
        sketch_axpy(acc, -tt_dot(av, window[i]), pairs[first + i]);
      }
      rec.times.orth += sw.lap();
      vt = stta_recover(acc, basis_spec);
      rec.times.round += sw.lap();
    } else {
      vt = std::move(av);
      const Index lo = std::max<Index>(0, static_cast<Index>(basis.size()) - cfg.window);
      if (enhanced) {
        for (const auto& vi : window) vt = tt_axpby(1.0, vt, -tt_dot(vt, vi), vi);
      } else {
        for (Index i = lo; i < static_cast<Index>(basis.size()); ++i) {
          vt = tt_axpby(1.0, vt, -tt_dot(vt, basis[i]), basis[i]);
        }
      }
      rec.times.orth += sw.lap();
      vt = tt_round(vt, basis_spec);
      rec.times.round += sw.lap();
    }
    const double hn = tt_norm(vt);
    rec.times.orth += sw.lap();

    const LsqResult lsq = sketched_lsq(w.leftCols(k + 1), sr0);
    y = lsq.y;
    relres = lsq.residual / sb;
    rec.times.lsq = sw.lap();
    if (lsq.conditioning < kIllConditioned && !warned) {
      std::ostringstream msg;
      msg << "sketched basis is ill-conditioned at iteration " << k + 1 << " (sigma ratio "
          << lsq.conditioning << ")";
      report.warnings.push_back(msg.str());
      warned = true;
    }

    rec.res_sketched = relres;
    rec.max_rank = vt.max_rank();
    const bool breakdown = hn <= kBreakdown * norm_av;
    const bool stop = breakdown || (relres <= cfg.tol && !cfg.force_iterations) || k + 1 == m;
    if (!stop) {
      TTVector next = tt_scale(vt, 1.0 / hn);
      if (enhanced) {
        pairs.push_back(stta_sketch(next, *frame));
        rec.times.sketch += sw.lap();
        window.push_back(std::move(next));
        note_resident(report, cfg, static_cast<Index>(window.size()));
        while (static_cast<Index>(window.size()) > cfg.window) window.pop_front();
      } else {
        basis.push_back(std::move(next));
        note_resident(report, cfg, static_cast<Index>(basis.size()));
      }
    }
    if (cfg.track_true_residual) rec.res_true = true_residual(a, b, solution(y));

    report.totals += rec.times;
    report.history.push_back(rec);
    report.iterations = k + 1;
    if (stop) break;
  }
  report.converged = relres <= cfg.tol;

  Stopwatch rsw;
  out.x = solution(y);
  report.recovery_time = rsw.lap();
  report.wall_time = wall.lap();
  return out;
}

}  // namespace

SolveResult tt_sgmres_vanilla(const TTOperator& a, const TTVector& b, const TTVector& x0,
                              const SolverConfig& cfg, const KhatriRaoSketch& s) {
  return sketched_gmres(a, nullptr, b, x0, cfg, s, nullptr, Variant::kVanilla);
}

SolveResult tt_sgmres(const TTOperator& a, const TTVector& b, const TTVector& x0,
                      const SolverConfig& cfg, const KhatriRaoSketch& s,
                      const StreamFrame& frame) {
  return sketched_gmres(a, nullptr, b, x0, cfg, s, &frame, Variant::kEnhanced);
}

SolveResult tt_spgmres(const TTOperator& a, const Preconditioner& p, const TTVector& b,
                       const TTVector& x0, const SolverConfig& cfg, const KhatriRaoSketch& s,
                       const StreamFrame& frame) {
  return sketched_gmres(a, &p, b, x0, cfg, s, &frame, Variant::kEnhanced);
}

}  // namespace ttk
