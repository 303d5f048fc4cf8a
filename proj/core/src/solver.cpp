#include "magcut/solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "magcut/rng.hpp"

namespace magcut {

namespace {

// Steps that would push b_i past this are treated as infeasible; keeps
// q*b^2 and log(b^2) finite in degenerate zero-cost instances.
constexpr double kMaxBi = 1e100;

// The block stays factorizable only while the Schur complement b^2 (1 - s)
// keeps a few digits against b^2; steps are accepted up to this margin.
constexpr double kFeasibilityMargin = 1e-8;

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

double resolve_mu(const SolverConfig& cfg, const CostMatrix& rem) {
  if (cfg.mu > 0.0) return cfg.mu;
  const double trace = rem.entries.trace();
  // A square invertible operator gives Tr(ReM) = 0 up to rounding noise;
  // fall back to a unit-scale barrier there so the noise cannot dominate.
  if (trace < 1e-9 * rem.n) return 1e-2;
  return 1e-2 * trace / rem.n;
}

LiftedMatrix::LiftedMatrix(RMat e) : entries(std::move(e)) {
  if (entries.rows() != entries.cols())
    throw DimensionError("lifted matrix must be square");
  n = static_cast<int>(entries.rows());
}

bool LiftedMatrix::is_positive_definite() const {
  Eigen::LLT<RMat> llt(entries);
  return llt.info() == Eigen::Success;
}

LiftedMatrix init_lifted(int n) {
  if (n < 2) throw DimensionError("init_lifted: n must be >= 2");
  return LiftedMatrix(RMat::Identity(n, n));
}

BlockWorkspace::BlockWorkspace(const LiftedMatrix& B, const CostMatrix& rem,
                               int i, double mu, double cross_factor)
    : i_(i), mu_(mu), c_(cross_factor) {
  const int n = B.n;
  if (rem.n != n) throw DimensionError("block workspace: dimension mismatch");
  if (i < 0 || i >= n) throw DimensionError("block workspace: index out of range");

  const int a = i;           // rows/cols before i
  const int b = n - i - 1;   // rows/cols after i

  P_.resize(n - 1, n - 1);
  P_.topLeftCorner(a, a) = B.entries.topLeftCorner(a, a);
  P_.topRightCorner(a, b) = B.entries.topRightCorner(a, b);
  P_.bottomLeftCorner(b, a) = B.entries.bottomLeftCorner(b, a);
  P_.bottomRightCorner(b, b) = B.entries.bottomRightCorner(b, b);

  Q_.resize(n - 1);
  Q_.head(a) = rem.entries.col(i).head(a);
  Q_.tail(b) = rem.entries.col(i).tail(b);
  q_ = rem.entries(i, i);

  b_ = std::sqrt(B.entries(i, i));
  yp_.resize(n - 1);
  yp_.head(a) = B.entries.col(i).head(a) / b_;
  yp_.tail(b) = B.entries.col(i).tail(b) / b_;

  llt_.compute(P_);
  valid_ = (llt_.info() == Eigen::Success) && b_ > 0.0 && std::isfinite(b_);
  if (valid_) PQ_ = P_ * Q_;
}

double BlockWorkspace::barrier_s(const RVec& yp) const {
  // y'^T P^{-1} y' = || L^{-1} y' ||^2 with P = L L^T.
  RVec w = llt_.matrixL().solve(yp);
  return w.squaredNorm();
}

bool BlockWorkspace::feasible(const RVec& yp, double b) const {
  if (!(b > 0.0) || b > kMaxBi) return false;
  const double s = barrier_s(yp);
  return std::isfinite(s) && s < 1.0;
}

double BlockWorkspace::objective(const RVec& yp, double b) const {
  const double s = barrier_s(yp);
  if (!(b > 0.0) || !(s < 1.0)) return std::numeric_limits<double>::infinity();
  return c_ * Q_.dot(yp) * b + q_ * b * b - mu_ * std::log1p(-s) -
         2.0 * mu_ * std::log(b);
}

RVec BlockWorkspace::gradient_y(const RVec& yp, double b) const {
  const RVec v = llt_.solve(yp);
  const double s = yp.dot(v);
  return c_ * b * Q_ + (2.0 * mu_ / (1.0 - s)) * v;
}

double BlockWorkspace::gradient_b(const RVec& yp, double b) const {
  return c_ * Q_.dot(yp) + 2.0 * q_ * b - 2.0 * mu_ / b;
}

RMat BlockWorkspace::hessian_y(const RVec& yp) const {
  const RMat pinv_mat = pinv();
  const RVec v = pinv_mat * yp;
  const double s = yp.dot(v);
  const double one_minus = 1.0 - s;
  return (2.0 * mu_ / one_minus) * pinv_mat +
         (4.0 * mu_ / (one_minus * one_minus)) * v * v.transpose();
}

RMat BlockWorkspace::pinv() const {
  const int k = static_cast<int>(P_.rows());
  return llt_.solve(RMat::Identity(k, k));
}

void BlockWorkspace::newton_direction(RVec& dy, double& db) const {
  const RVec v = llt_.solve(yp_);  // P^{-1} y'
  const double s = yp_.dot(v);
  const double one_minus = 1.0 - s;

  // H = a P^{-1} + beta v v^T with a = 2mu/(1-s), beta = 4mu/(1-s)^2 gives
  // H^{-1} w = ((1-s)/(2mu)) P w - ((1-s)/(mu(1+s))) (y'.w) y' by
  // Sherman-Morrison, using P v = y'.
  const RVec grad = c_ * b_ * Q_ + (2.0 * mu_ / one_minus) * v;
  const RVec Pgrad = c_ * b_ * PQ_ + (2.0 * mu_ / one_minus) * yp_;
  const double yg = yp_.dot(grad);
  dy = -((one_minus / (2.0 * mu_)) * Pgrad -
         (one_minus / (mu_ * (1.0 + s))) * yg * yp_);

  const double kb = 2.0 * q_ * b_ - 2.0 * mu_ / b_;
  const double Lb = 2.0 * q_ + 2.0 * mu_ / (b_ * b_);
  // Rounding can leave q marginally negative; the scalar model is only
  // valid while its curvature is positive.
  db = Lb > 0.0 ? -(c_ * Q_.dot(yp_) + kb) / Lb : 0.0;
}

bool BlockWorkspace::take_step(const SolverConfig& cfg) {
  RVec dy;
  double db = 0.0;
  newton_direction(dy, db);
  if (!dy.allFinite() || !std::isfinite(db)) return false;

  // A vanishing direction means the block is already stationary.
  const double scale = 1.0 + yp_.cwiseAbs().maxCoeff() + std::abs(b_);
  if (dy.cwiseAbs().maxCoeff() + std::abs(db) <= 1e-15 * scale) return true;

  const double s0 = barrier_s(yp_);
  const double f0 = objective(yp_, b_);
  double step = 1.0;
  while (step >= cfg.min_step) {
    const RVec y_trial = yp_ + step * dy;
    const double b_trial = b_ + step * db;
    if (b_trial > 0.0 && b_trial <= kMaxBi) {
      const double s_trial = barrier_s(y_trial);
      const bool within_margin =
          s_trial < 1.0 - kFeasibilityMargin || s_trial < s0;
      if (std::isfinite(s_trial) && s_trial < 1.0 && within_margin) {
        const double f_trial = objective(y_trial, b_trial);
        if (std::isfinite(f_trial) && f_trial <= f0) {
          yp_ = y_trial;
          b_ = b_trial;
          return true;
        }
      }
    }
    step *= cfg.backtrack_shrink;
  }
  return false;
}

void BlockWorkspace::write_back(LiftedMatrix& B) const {
  const int n = B.n;
  const int a = i_;
  const int b = n - i_ - 1;
  const RVec col = b_ * yp_;
  B.entries.col(i_).head(a) = col.head(a);
  B.entries.col(i_).tail(b) = col.tail(b);
  B.entries.row(i_).head(a) = col.head(a).transpose();
  B.entries.row(i_).tail(b) = col.tail(b).transpose();
  B.entries(i_, i_) = b_ * b_;
}

BlockUpdateResult block_update(LiftedMatrix& B, const CostMatrix& rem, int i,
                               const SolverConfig& cfg) {
  const double mu = resolve_mu(cfg, rem);
  BlockWorkspace ws(B, rem, i, mu, cfg.cross_term_factor);
  BlockUpdateResult out;
  if (!ws.valid()) {
    out.skipped = true;
    out.yprime = ws.yprime();
    out.bi = ws.bi();
    return out;
  }
  bool any_accepted = false;
  for (int t = 0; t < cfg.inner_newton_iters; ++t) {
    if (!ws.take_step(cfg)) break;
    any_accepted = true;
  }
  if (any_accepted) ws.write_back(B);
  out.skipped = !any_accepted;
  out.yprime = ws.yprime();
  out.bi = ws.bi();
  return out;
}

ExtractResult extract_rank_one(const LiftedMatrix& B) {
  Eigen::SelfAdjointEigenSolver<RMat> es(B.entries);
  if (es.info() != Eigen::Success)
    throw NumericalError("extract_rank_one: eigendecomposition failed");
  const int n = B.n;
  const double lmax = es.eigenvalues()[n - 1];
  const double l2 = n >= 2 ? es.eigenvalues()[n - 2] : 0.0;

  ExtractResult out;
  out.lambda_max = lmax;
  out.lambda_2 = l2;
  out.b_hat = std::sqrt(std::max(lmax, 0.0)) * es.eigenvectors().col(n - 1);
  if (out.b_hat.sum() < 0.0) out.b_hat = -out.b_hat;
  if (l2 <= 1e-14 * std::max(lmax, 0.0) || l2 <= 0.0) {
    out.tightness = kTightnessSentinel;
  } else {
    out.tightness = lmax / l2;
  }
  out.direction_defined = lmax > 0.0 && (lmax - l2) > 1e-12 * lmax;
  return out;
}

double direction_angle(const RVec& a, const RVec& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return quiet_nan();
  const RVec ua = a / na;
  const RVec ub = b / nb;
  const double d = std::min((ua - ub).norm(), (ua + ub).norm());
  return 2.0 * std::asin(std::min(1.0, 0.5 * d));
}

namespace {

double barrier_objective(const LiftedMatrix& B, const CostMatrix& rem, double mu,
                         double* trace_term) {
  const double tr = B.entries.cwiseProduct(rem.entries).sum();
  if (trace_term) *trace_term = tr;
  Eigen::LLT<RMat> llt(B.entries);
  if (llt.info() != Eigen::Success)
    throw NumericalError("barrier iterate lost positive definiteness");
  const double logdet =
      2.0 * RVec(llt.matrixLLT().diagonal()).array().log().sum();
  return tr - mu * logdet;
}

}  // namespace

SweepRecord sweep(LiftedMatrix& B, const CostMatrix& rem, const SolverConfig& cfg,
                  RVec* direction_out) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = B.n;
  if (rem.n != n) throw DimensionError("sweep: dimension mismatch");

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  if (cfg.randomized_sweep_order) {
    Rng rng(cfg.order_seed);
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.uniform01() * (i + 1));
      std::swap(order[i], order[std::min(j, i)]);
    }
  }

  SweepRecord rec;
  for (int i : order)
    if (block_update(B, rem, i, cfg).skipped) ++rec.skipped_blocks;

  const double mu = resolve_mu(cfg, rem);
  rec.objective = barrier_objective(B, rem, mu, &rec.trace_term);

  const ExtractResult ex = extract_rank_one(B);
  rec.tightness = ex.tightness;
  rec.direction_defined = ex.direction_defined;
  rec.direction_delta = quiet_nan();
  if (direction_out) *direction_out = ex.b_hat;

  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

SolveResult solve(const CostMatrix& rem, const SolverConfig& cfg) {
  SolveResult out;
  out.B = init_lifted(rem.n);
  out.trace.mu = resolve_mu(cfg, rem);

  RVec prev_dir;
  bool prev_defined = false;
  for (int k = 1; k <= cfg.max_sweeps; ++k) {
    RVec dir;
    SweepRecord rec = sweep(out.B, rem, cfg, &dir);
    rec.sweep = k;
    if (rec.direction_defined && prev_defined)
      rec.direction_delta = direction_angle(dir, prev_dir);
    out.trace.sweeps.push_back(rec);

    const bool stop = cfg.direction_tol > 0.0 && rec.direction_defined &&
                      prev_defined && std::isfinite(rec.direction_delta) &&
                      rec.direction_delta < cfg.direction_tol;
    if (stop) {
      out.trace.converged = true;
      break;
    }
    prev_dir = dir;
    prev_defined = rec.direction_defined;
  }
  if (!out.trace.converged && !out.trace.sweeps.empty())
    out.trace.direction_undefined_stable =
        !out.trace.sweeps.back().direction_defined;
  return out;
}

Signal reconstruct(const MeasurementOperator& op, const PhaseVector& u,
                   const RVec& b_hat) {
  if (u.n() != op.n() || b_hat.size() != op.n())
    throw DimensionError("reconstruct: length mismatch");
  const CVec z = u.values.cwiseProduct(b_hat.cast<Complex>());
  return op.pinv_signal(z);
}

std::string SolverTrace::to_csv(bool include_timing) const {
  std::string out = "sweep,objective,trace_term,tightness,direction_delta,seconds\n";
  char buf[256];
  for (const SweepRecord& r : sweeps) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.sweep,
                  r.objective, r.trace_term, r.tightness, r.direction_delta,
                  include_timing ? r.seconds : 0.0);
    out += buf;
  }
  return out;
}

}  // namespace magcut
