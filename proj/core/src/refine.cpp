#include "magcut/refine.hpp"

#include "magcut/rng.hpp"

namespace magcut {

RefineResult refine_iterate(const MeasurementOperator& op, const PhaseVector& u,
                            const Signal& x0, const RefineConfig& cfg) {
  if (x0.size() != op.p()) throw DimensionError("refine: signal length mismatch");
  if (u.n() != op.n()) throw DimensionError("refine: phase length mismatch");
  if (cfg.max_iters < 1) throw ConfigError("refine: max_iters must be >= 1");

  RefineResult out;
  out.x = x0;
  CVec z(op.n()), projected(op.n());
  for (;;) {
    const CVec measured = op.forward(out.x);
    z = u.values.cwiseProduct(measured.cwiseAbs().cast<Complex>());
    const double z_norm = z.norm();
    if (z_norm <= 1e-300)
      throw DegenerateIterateError("refine: iterate collapsed to zero");

    const CVec back = op.pinv_apply(z);
    projected = op.forward_values(back);
    const double residual = (z - projected).norm() / z_norm;
    out.residuals.push_back(residual);

    if (residual < cfg.residual_tol) {
      out.converged = true;
      break;
    }
    if (out.iterations >= cfg.max_iters) break;
    out.x.values = back;
    ++out.iterations;
  }
  return out;
}

RefineResult run_baseline_iterative(const MeasurementOperator& op,
                                    const PhaseVector& u, const RefineConfig& cfg) {
  Rng rng(cfg.seed);
  CVec x0(op.p());
  for (int i = 0; i < op.p(); ++i) x0[i] = rng.complex_gaussian();
  return refine_iterate(op, u, Signal(std::move(x0), op.shape()), cfg);
}

}  // namespace magcut
