#pragma once

#include <Eigen/Cholesky>
#include <cstdint>
#include <string>
#include <vector>

#include "magcut/cost_matrix.hpp"
#include "magcut/measurement.hpp"
#include "magcut/signal.hpp"

namespace magcut {

/// Reported tightness when lambda_2 <= 1e-14 * lambda_max (exactly rank one).
inline constexpr double kTightnessSentinel = 1e300;

struct SolverConfig {
  /// Barrier weight; <= 0 selects the default 1e-2 * Tr(ReM)/n.
  double mu = 0.0;
  int max_sweeps = 100;
  int inner_newton_iters = 3;
  double backtrack_shrink = 0.5;
  double min_step = 1e-12;
  /// Stop once the extracted direction moves by less than this angle
  /// (radians) between consecutive sweeps; 0 disables the direction stop.
  double direction_tol = 1e-9;
  /// Coefficient of the cross term Q^T y' b_i in the block objective.
  /// 2 matches the trace expansion over a row/column pair; 1 reproduces the
  /// literal single-count block form.
  double cross_term_factor = 2.0;
  bool randomized_sweep_order = false;
  std::uint64_t order_seed = 0;
};

double resolve_mu(const SolverConfig& cfg, const CostMatrix& rem);

/// Symmetric positive-definite barrier iterate. Feasibility is certified by
/// a successful Cholesky factorization.
struct LiftedMatrix {
  RMat entries;
  int n = 0;

  LiftedMatrix() = default;
  explicit LiftedMatrix(RMat e);
  bool is_positive_definite() const;
};

/// B = identity: feasible start with unit block margins.
LiftedMatrix init_lifted(int n);

struct SweepRecord {
  int sweep = 0;
  double objective = 0.0;      // Tr(B ReM) - mu log det(B)
  double trace_term = 0.0;     // Tr(B ReM)
  double tightness = 0.0;      // lambda_max / lambda_2 of B
  double direction_delta = 0.0;  // angle to previous sweep's direction (rad)
  double seconds = 0.0;
  int skipped_blocks = 0;
  bool direction_defined = false;
};

struct SolverTrace {
  std::vector<SweepRecord> sweeps;
  double mu = 0.0;
  bool converged = false;  // stopped via direction_tol
  bool direction_undefined_stable = false;

  int total_sweeps() const { return static_cast<int>(sweeps.size()); }
  std::string to_csv(bool include_timing = true) const;
};

/// One row/column block of the barrier problem: index i, the fixed principal
/// submatrix P = B_{i^c,i^c} (held with its Cholesky factor, standing in for
/// P^{-1}), the scaled off-diagonal y', the diagonal root b_i, and the cost
/// row Q = ReM_{i^c,i}, q = ReM_{ii}.
class BlockWorkspace {
 public:
  BlockWorkspace(const LiftedMatrix& B, const CostMatrix& rem, int i, double mu,
                 double cross_factor);

  bool valid() const { return valid_; }  // false if P failed to factor
  int index() const { return i_; }
  const RVec& yprime() const { return yp_; }
  double bi() const { return b_; }
  const RVec& Qvec() const { return Q_; }
  double qdiag() const { return q_; }
  double mu() const { return mu_; }
  double cross_factor() const { return c_; }

  /// y'^T P^{-1} y'; feasibility requires this < 1.
  double barrier_s(const RVec& yp) const;
  bool feasible(const RVec& yp, double b) const;

  /// F(y', b) = c (Q.y') b + q b^2 - mu log(1 - s) - mu log(b^2).
  double objective(const RVec& yp, double b) const;
  RVec gradient_y(const RVec& yp, double b) const;
  double gradient_b(const RVec& yp, double b) const;
  /// Barrier Hessian in y' (materialized; test support).
  RMat hessian_y(const RVec& yp) const;
  /// Explicit P^{-1} (materialized; test support).
  RMat pinv() const;

  /// Decoupled Newton direction at the current iterate.
  void newton_direction(RVec& dy, double& db) const;

  /// One Newton step with joint backtracking on feasibility and
  /// non-increase of F. Returns false when the line search exhausts
  /// cfg.min_step without an acceptable point.
  bool take_step(const SolverConfig& cfg);

  /// Writes b_i * y' into row/column i and b_i^2 into the diagonal.
  void write_back(LiftedMatrix& B) const;

 private:
  int i_ = 0;
  double mu_ = 0.0;
  double c_ = 2.0;
  RVec Q_;
  double q_ = 0.0;
  RMat P_;
  Eigen::LLT<RMat> llt_;
  RVec PQ_;  // P * Q, fixed per block
  RVec yp_;
  double b_ = 1.0;
  bool valid_ = false;
};

struct BlockUpdateResult {
  bool skipped = false;  // no step accepted (or P failed to factor)
  RVec yprime;
  double bi = 0.0;
};

/// Runs cfg.inner_newton_iters decoupled Newton steps on block i and writes
/// the result back into B. The full-matrix barrier objective never
/// increases.
BlockUpdateResult block_update(LiftedMatrix& B, const CostMatrix& rem, int i,
                               const SolverConfig& cfg);

struct ExtractResult {
  RVec b_hat;          // sqrt(lambda_max) * v_max, entry sum >= 0
  double tightness = 0.0;
  double lambda_max = 0.0;
  double lambda_2 = 0.0;
  bool direction_defined = false;  // top eigenvalue separated from the rest
};

/// Rank-one extraction from the solved iterate.
ExtractResult extract_rank_one(const LiftedMatrix& B);

/// One pass of block updates for i = 1..n; returns the sweep record and,
/// optionally, the extracted direction used for the stopping rule.
SweepRecord sweep(LiftedMatrix& B, const CostMatrix& rem, const SolverConfig& cfg,
                  RVec* direction_out = nullptr);

struct SolveResult {
  LiftedMatrix B;
  SolverTrace trace;
};

/// Runs sweeps until the extracted direction stabilizes (angle change below
/// cfg.direction_tol) or cfg.max_sweeps is reached. Non-convergence is
/// reported in the trace, never as an error.
SolveResult solve(const CostMatrix& rem, const SolverConfig& cfg = {});

/// x_hat = A^+ diag(u) b_hat, reshaped to the operator's signal shape.
Signal reconstruct(const MeasurementOperator& op, const PhaseVector& u,
                   const RVec& b_hat);

/// Angle in radians between the directions spanned by a and b (sign-free).
double direction_angle(const RVec& a, const RVec& b);

}  // namespace magcut
