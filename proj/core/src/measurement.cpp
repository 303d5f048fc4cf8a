#include "magcut/measurement.hpp"

#include <cmath>

#include "magcut/rng.hpp"

namespace magcut {

RVec RandomMasks::combined_energy() const {
  RVec d = RVec::Zero(p);
  for (const CVec& r : masks) d += r.cwiseAbs2();
  return d;
}

RandomMasks make_masks(int p, int m, std::uint64_t seed, MaskKind kind) {
  if (p < 2) throw DimensionError("make_masks: p must be >= 2");
  if (m < 1) throw DimensionError("make_masks: m must be >= 1");

  RandomMasks out;
  out.seed = seed;
  out.m = m;
  out.p = p;
  out.kind = kind;
  out.masks.assign(m, CVec(p));

  Rng rng(seed);
  auto draw = [&]() -> Complex {
    return kind == MaskKind::gaussian ? rng.complex_gaussian() : rng.unit_phase();
  };

  // Column-by-column so a low-energy column can be redrawn in place.
  for (int k = 0; k < p; ++k) {
    int attempts = 0;
    for (;;) {
      double energy = 0.0;
      for (int i = 0; i < m; ++i) {
        const Complex v = draw();
        out.masks[i][k] = v;
        energy += std::norm(v);
      }
      if (energy > kMaskEnergyFloor) break;
      if (++attempts >= 100)
        throw ConfigError("make_masks: column resampling failed 100 times");
    }
  }
  return out;
}

bool PhaseVector::all_degenerate() const {
  for (bool f : degenerate)
    if (!f) return false;
  return !degenerate.empty();
}

PhaseVector phase_of(const CVec& z, double floor) {
  PhaseVector u;
  const int n = static_cast<int>(z.size());
  u.values.resize(n);
  u.degenerate.assign(n, false);
  const double max_abs = n > 0 ? z.cwiseAbs().maxCoeff() : 0.0;
  const double threshold = floor * max_abs;
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(z[i]);
    if (a <= threshold) {
      u.values[i] = Complex(1.0, 0.0);
      u.degenerate[i] = true;
    } else {
      u.values[i] = z[i] / a;
    }
  }
  return u;
}

MeasurementOperator::MeasurementOperator(RandomMasks masks, SignalShape shape)
    : masks_(std::move(masks)), shape_(shape), dft_(shape) {
  if (masks_.p != shape_.p)
    throw DimensionError("mask length does not match signal shape");
  if (masks_.m < 1 || static_cast<int>(masks_.masks.size()) != masks_.m)
    throw DimensionError("mask count mismatch");
  for (const CVec& r : masks_.masks)
    if (r.size() != shape_.p) throw DimensionError("mask length mismatch");
  energy_ = masks_.combined_energy();
  if (energy_.minCoeff() <= kMaskEnergyFloor)
    throw IllConditionedError("combined mask energy below full-rank floor");
  inv_energy_ = energy_.cwiseInverse();
}

CVec MeasurementOperator::forward(const Signal& x) const {
  if (x.shape != shape_)
    throw DimensionError("signal shape does not match the operator");
  return forward_values(x.values);
}

CVec MeasurementOperator::forward_values(const CVec& x) const {
  if (x.size() != shape_.p) throw DimensionError("forward: length mismatch");
  CVec out(n());
  CVec masked(shape_.p), block(shape_.p);
  for (int i = 0; i < masks_.m; ++i) {
    masked = masks_.masks[i].cwiseProduct(x);
    dft_.forward(masked, block);
    out.segment(static_cast<Eigen::Index>(i) * shape_.p, shape_.p) = block;
  }
  return out;
}

CVec MeasurementOperator::adjoint(const CVec& z) const {
  if (z.size() != n()) throw DimensionError("adjoint: length mismatch");
  CVec acc = CVec::Zero(shape_.p);
  CVec block(shape_.p), back(shape_.p);
  for (int i = 0; i < masks_.m; ++i) {
    block = z.segment(static_cast<Eigen::Index>(i) * shape_.p, shape_.p);
    dft_.inverse(block, back);
    acc += masks_.masks[i].conjugate().cwiseProduct(back);
  }
  return acc;
}

CVec MeasurementOperator::pinv_apply(const CVec& z) const {
  if (energy_.minCoeff() <= kMaskEnergyFloor)
    throw IllConditionedError("pinv_apply: operator lost full column rank");
  return inv_energy_.cast<Complex>().cwiseProduct(adjoint(z));
}

CVec MeasurementOperator::projector_apply(const CVec& z) const {
  return forward_values(pinv_apply(z));
}

Signal MeasurementOperator::pinv_signal(const CVec& z) const {
  return Signal(pinv_apply(z), shape_);
}

}  // namespace magcut
