#pragma once

#include <memory>

#include "magcut/signal.hpp"

namespace magcut {

/// Unitary discrete Fourier transform for a fixed shape.
///
/// Forward kernel is e^{-j2*pi*k*l/p}/sqrt(p); the 2-D transform is the
/// row-column separable product with the same normalization, applied to
/// column-major vectorized images. inverse() is the exact adjoint.
class UnitaryDft {
 public:
  explicit UnitaryDft(SignalShape shape);
  ~UnitaryDft();
  UnitaryDft(UnitaryDft&&) noexcept;
  UnitaryDft& operator=(UnitaryDft&&) noexcept;
  UnitaryDft(const UnitaryDft&) = delete;
  UnitaryDft& operator=(const UnitaryDft&) = delete;

  const SignalShape& shape() const { return shape_; }

  /// out = unitary DFT of in. Reentrant; safe for concurrent callers.
  void forward(const CVec& in, CVec& out) const;
  /// out = unitary inverse DFT of in.
  void inverse(const CVec& in, CVec& out) const;

  CVec forward(const CVec& in) const {
    CVec out;
    forward(in, out);
    return out;
  }
  CVec inverse(const CVec& in) const {
    CVec out;
    inverse(in, out);
    return out;
  }

 private:
  SignalShape shape_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace magcut
