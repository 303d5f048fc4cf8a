#pragma once

#include <Eigen/Dense>
#include <complex>

#include "magcut/errors.hpp"

namespace magcut {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

/// Shape of a signal: a flat vector of length p, or an h-by-w image
/// vectorized column-major (p = h*w).
struct SignalShape {
  bool is_2d = false;
  int h = 0;
  int w = 0;
  int p = 0;

  static SignalShape one_d(int p) {
    if (p < 2) throw DimensionError("signal length must be >= 2");
    SignalShape s;
    s.p = p;
    return s;
  }

  static SignalShape two_d(int h, int w) {
    if (h < 1 || w < 1 || h * w < 2)
      throw DimensionError("2-D signal must have h*w >= 2");
    SignalShape s;
    s.is_2d = true;
    s.h = h;
    s.w = w;
    s.p = h * w;
    return s;
  }

  bool operator==(const SignalShape&) const = default;
};

/// The unknown to recover: complex amplitudes plus their shape.
struct Signal {
  CVec values;
  SignalShape shape;

  Signal() = default;
  Signal(CVec v, SignalShape s) : values(std::move(v)), shape(s) {
    if (values.size() != shape.p)
      throw DimensionError("signal values do not match the declared shape");
  }

  int size() const { return shape.p; }
};

}  // namespace magcut
