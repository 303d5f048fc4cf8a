#include "magcut/dft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace magcut {
namespace {

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(CVec& v) { return reinterpret_cast<fftw_complex*>(v.data()); }

}  // namespace

struct UnitaryDft::Impl {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  double scale = 1.0;

  ~Impl() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

UnitaryDft::UnitaryDft(SignalShape shape) : shape_(shape), impl_(std::make_unique<Impl>()) {
  CVec a(shape_.p), b(shape_.p);
  a.setZero();
  b.setZero();
  // FFTW_UNALIGNED lets the plans execute on any caller-provided buffers.
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard<std::mutex> lock(plan_mutex());
  if (shape_.is_2d) {
    // Column-major h-by-w data viewed as row-major w-by-h; the separable
    // transform commutes with the transpose, so the layout round-trips.
    impl_->fwd = fftw_plan_dft_2d(shape_.w, shape_.h, as_fftw(a), as_fftw(b),
                                  FFTW_FORWARD, flags);
    impl_->bwd = fftw_plan_dft_2d(shape_.w, shape_.h, as_fftw(a), as_fftw(b),
                                  FFTW_BACKWARD, flags);
  } else {
    impl_->fwd = fftw_plan_dft_1d(shape_.p, as_fftw(a), as_fftw(b), FFTW_FORWARD, flags);
    impl_->bwd = fftw_plan_dft_1d(shape_.p, as_fftw(a), as_fftw(b), FFTW_BACKWARD, flags);
  }
  if (!impl_->fwd || !impl_->bwd) throw NumericalError("failed to create FFT plans");
  impl_->scale = 1.0 / std::sqrt(static_cast<double>(shape_.p));
}

UnitaryDft::~UnitaryDft() = default;
UnitaryDft::UnitaryDft(UnitaryDft&&) noexcept = default;
UnitaryDft& UnitaryDft::operator=(UnitaryDft&&) noexcept = default;

void UnitaryDft::forward(const CVec& in, CVec& out) const {
  if (in.size() != shape_.p) throw DimensionError("DFT input length mismatch");
  out.resize(shape_.p);
  fftw_execute_dft(impl_->fwd,
                   reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  out *= impl_->scale;
}

void UnitaryDft::inverse(const CVec& in, CVec& out) const {
  if (in.size() != shape_.p) throw DimensionError("DFT input length mismatch");
  out.resize(shape_.p);
  fftw_execute_dft(impl_->bwd,
                   reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  out *= impl_->scale;
}

}  // namespace magcut
