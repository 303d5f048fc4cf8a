#pragma once

#include <cstdint>
#include <vector>

#include "magcut/measurement.hpp"
#include "magcut/signal.hpp"

namespace magcut {

struct RefineConfig {
  int max_iters = 200;
  double residual_tol = 1e-12;  // relative distance of u.*|Ax| to range(A)
  enum class Init { from_signal, random } init = Init::from_signal;
  std::uint64_t seed = 0;  // used by Init::random
};

struct RefineResult {
  Signal x;
  std::vector<double> residuals;  // one entry per evaluated iterate, x0 first
  int iterations = 0;             // update steps applied
  bool converged = false;
};

/// Phase-substitution iteration x <- A^+ (u .* |A x|): alternating projection
/// between range(A) and the phase ray set. The residual
/// ||(I - A A^+)(u .* |A x|)|| / ||u .* |A x||| is recorded per iterate and is
/// non-increasing. Throws DegenerateIterateError when ||A x|| collapses.
RefineResult refine_iterate(const MeasurementOperator& op, const PhaseVector& u,
                            const Signal& x0, const RefineConfig& cfg = {});

/// The comparison baseline: the same iteration started from a seeded random
/// complex Gaussian signal.
RefineResult run_baseline_iterative(const MeasurementOperator& op,
                                    const PhaseVector& u, const RefineConfig& cfg);

}  // namespace magcut
