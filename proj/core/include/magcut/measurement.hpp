#pragma once

#include <cstdint>
#include <vector>

#include "magcut/dft.hpp"
#include "magcut/signal.hpp"

namespace magcut {

enum class MaskKind { gaussian, unimodular };

/// Combined per-column energy D_kk = sum_i |r_i[k]|^2 must exceed this floor
/// for the stacked operator to keep full column rank (A^H A = D invertible).
inline constexpr double kMaskEnergyFloor = 1e-8;

/// Diagonals of the m random masks applied before each DFT block.
struct RandomMasks {
  std::vector<CVec> masks;  // m vectors, each of length p
  std::uint64_t seed = 0;
  int m = 0;
  int p = 0;
  MaskKind kind = MaskKind::gaussian;

  /// D_kk = sum_i |r_i[k]|^2.
  RVec combined_energy() const;
};

/// Draws m masks of length p with i.i.d. circular complex Gaussian entries
/// (or unit-modulus random phases). Columns whose combined energy falls at
/// or below kMaskEnergyFloor are redrawn; the result is a pure function of
/// (p, m, seed, kind).
RandomMasks make_masks(int p, int m, std::uint64_t seed,
                       MaskKind kind = MaskKind::gaussian);

/// Unit-modulus phases of a measurement, with degenerate entries flagged.
struct PhaseVector {
  CVec values;
  std::vector<bool> degenerate;

  int n() const { return static_cast<int>(values.size()); }
  bool all_degenerate() const;
};

/// values[i] = z_i/|z_i|. Entries with |z_i| <= floor * max_j |z_j| are set
/// to 1+0j and flagged; an identically zero z yields an all-degenerate
/// result (reconstruction impossible), not an error.
PhaseVector phase_of(const CVec& z, double floor = 1e-12);

/// The masked-Fourier measurement map A = [F R_1; ...; F R_m] with unitary
/// DFT blocks, its adjoint, pseudo-inverse and range projector. Immutable
/// after construction; safe to share across concurrent readers.
class MeasurementOperator {
 public:
  MeasurementOperator(RandomMasks masks, SignalShape shape);

  int p() const { return shape_.p; }
  int n() const { return shape_.p * masks_.m; }
  int m() const { return masks_.m; }
  const SignalShape& shape() const { return shape_; }
  const RandomMasks& masks() const { return masks_; }
  const RVec& combined_energy() const { return energy_; }

  /// A x: block i is the unitary DFT of r_i .* x.
  CVec forward(const Signal& x) const;
  CVec forward_values(const CVec& x) const;

  /// A^H z = sum_i conj(r_i) .* IDFT(z_i).
  CVec adjoint(const CVec& z) const;

  /// A^+ z = D^{-1} A^H z, exact because A^H A = D is diagonal.
  CVec pinv_apply(const CVec& z) const;

  /// A A^+ z, the orthogonal projection of z onto range(A).
  CVec projector_apply(const CVec& z) const;

  /// A^+ z reshaped to the operator's signal shape.
  Signal pinv_signal(const CVec& z) const;

 private:
  RandomMasks masks_;
  SignalShape shape_;
  RVec energy_;
  RVec inv_energy_;
  UnitaryDft dft_;
};

}  // namespace magcut
