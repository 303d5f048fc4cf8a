#pragma once

#include "magcut/signal.hpp"

namespace magcut {

struct ErrorPair {
  double scale_resolved = 0.0;  // min over real alpha >= 0 of ||x - a*xhat||^2/||x||^2
  double raw = 0.0;             // ||x - xhat||^2 / ||x||^2
};

/// Phase-only data determines a signal at best up to a positive real scale,
/// so the scale-resolved error is the headline metric; the raw error is
/// reported alongside. Throws UndefinedMetricError when x = 0.
ErrorPair relative_error(const Signal& x, const Signal& xhat);

}  // namespace magcut
