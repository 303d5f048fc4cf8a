#include "magcut/metrics.hpp"

#include <algorithm>

namespace magcut {

ErrorPair relative_error(const Signal& x, const Signal& xhat) {
  if (x.size() != xhat.size())
    throw DimensionError("relative_error: length mismatch");
  const double x_energy = x.values.squaredNorm();
  if (x_energy == 0.0)
    throw UndefinedMetricError("relative_error: reference signal is zero");

  ErrorPair out;
  out.raw = (x.values - xhat.values).squaredNorm() / x_energy;

  const double xhat_energy = xhat.values.squaredNorm();
  if (xhat_energy == 0.0) {
    out.scale_resolved = 1.0;
    return out;
  }
  const double alpha =
      std::max(0.0, (xhat.values.dot(x.values)).real() / xhat_energy);
  out.scale_resolved = (x.values - alpha * xhat.values).squaredNorm() / x_energy;
  return out;
}

}  // namespace magcut
