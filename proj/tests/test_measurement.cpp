#include <doctest.h>

#include <complex>

#include "magcut/measurement.hpp"
#include "magcut/rng.hpp"
#include "support/oracles.hpp"

using namespace magcut;

namespace {

Signal random_signal(int p, std::uint64_t seed) {
  Rng rng(seed);
  CVec v(p);
  for (int i = 0; i < p; ++i) v[i] = rng.complex_gaussian();
  return Signal(std::move(v), SignalShape::one_d(p));
}

RandomMasks all_ones_mask(int p) {
  RandomMasks masks;
  masks.m = 1;
  masks.p = p;
  masks.masks = {CVec::Ones(p)};
  return masks;
}

}  // namespace

TEST_CASE("make_masks is a pure function of (p, m, seed)") {
  const RandomMasks a = make_masks(4, 2, 7);
  const RandomMasks b = make_masks(4, 2, 7);
  REQUIRE(a.masks.size() == 2);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 4; ++k) CHECK(a.masks[i][k] == b.masks[i][k]);  // bit-identical

  const RandomMasks c = make_masks(4, 2, 8);
  bool any_diff = false;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 4; ++k) any_diff |= (a.masks[i][k] != c.masks[i][k]);
  CHECK(any_diff);
}

TEST_CASE("make_masks keeps combined column energy above the floor") {
  const RandomMasks masks = make_masks(4, 1, 1);
  const RVec d = masks.combined_energy();
  for (int k = 0; k < 4; ++k) CHECK(d[k] > kMaskEnergyFloor);
}

TEST_CASE("make_masks draws unit-variance complex Gaussians") {
  const RandomMasks masks = make_masks(32, 3, 42);
  double sum = 0.0;
  for (const CVec& r : masks.masks) sum += r.cwiseAbs2().sum();
  const double mean = sum / (32.0 * 3.0);
  CHECK(mean > 0.5);
  CHECK(mean < 1.5);
}

TEST_CASE("make_masks unimodular kind has unit moduli") {
  const RandomMasks masks = make_masks(16, 2, 3, MaskKind::unimodular);
  for (const CVec& r : masks.masks)
    for (int k = 0; k < 16; ++k) CHECK(std::abs(std::abs(r[k]) - 1.0) < 1e-12);
}

TEST_CASE("make_masks rejects bad dimensions") {
  CHECK_THROWS_AS(make_masks(1, 1, 0), DimensionError);
  CHECK_THROWS_AS(make_masks(4, 0, 0), DimensionError);
}

TEST_CASE("forward of a unit impulse through an all-ones mask is flat") {
  MeasurementOperator op(all_ones_mask(4), SignalShape::one_d(4));
  CVec x = CVec::Zero(4);
  x[0] = 1.0;
  const CVec z = op.forward(Signal(x, SignalShape::one_d(4)));
  REQUIRE(z.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(z[i] - Complex(0.5, 0.0)) < 1e-12);
}

TEST_CASE("forward of zero is zero") {
  MeasurementOperator op(make_masks(8, 2, 1), SignalShape::one_d(8));
  const CVec z = op.forward_values(CVec::Zero(8));
  CHECK(z.norm() == 0.0);
}

TEST_CASE("forward preserves per-block energy (Parseval)") {
  const Signal x = random_signal(8, 5);
  MeasurementOperator op(make_masks(8, 2, 9), x.shape);
  const CVec z = op.forward(x);
  double masked_energy = 0.0;
  for (int i = 0; i < op.m(); ++i) {
    const CVec masked = op.masks().masks[i].cwiseProduct(x.values);
    masked_energy += masked.squaredNorm();
    // Per-block Parseval.
    CHECK(std::abs(z.segment(i * 8, 8).norm() - masked.norm()) < 1e-12);
  }
  CHECK(std::abs(z.squaredNorm() - masked_energy) < 1e-12 * masked_energy);
}

TEST_CASE("forward matches the dense operator oracle") {
  const Signal x = random_signal(6, 11);
  MeasurementOperator op(make_masks(6, 3, 12), x.shape);
  const CMat a = test::dense_operator(op);
  const CVec direct = a * x.values;
  const CVec z = op.forward(x);
  CHECK((z - direct).norm() < 1e-12 * direct.norm());
}

TEST_CASE("2-D forward matches the dense separable oracle") {
  const SignalShape shape = SignalShape::two_d(2, 3);
  Rng rng(77);
  CVec v(6);
  for (int i = 0; i < 6; ++i) v[i] = rng.complex_gaussian();
  const Signal x(v, shape);
  MeasurementOperator op(make_masks(6, 2, 13), shape);
  const CMat a = test::dense_operator(op);
  const CVec z = op.forward(x);
  CHECK((z - a * x.values).norm() < 1e-12 * z.norm());
}

TEST_CASE("adjoint inverts a unitary single-block operator") {
  MeasurementOperator op(all_ones_mask(8), SignalShape::one_d(8));
  const Signal x = random_signal(8, 21);
  const CVec back = op.adjoint(op.forward(x));
  CHECK((back - x.values).norm() < 1e-12 * x.values.norm());
}

TEST_CASE("adjoint of zero is zero") {
  MeasurementOperator op(make_masks(4, 2, 2), SignalShape::one_d(4));
  CHECK(op.adjoint(CVec::Zero(8)).norm() == 0.0);
}

TEST_CASE("adjoint satisfies the inner-product identity") {
  const Signal x = random_signal(8, 31);
  MeasurementOperator op(make_masks(8, 3, 32), x.shape);
  Rng rng(33);
  CVec z(op.n());
  for (int i = 0; i < op.n(); ++i) z[i] = rng.complex_gaussian();
  const Complex lhs = op.forward(x).dot(z);        // <Ax, z>
  const Complex rhs = x.values.dot(op.adjoint(z)); // <x, A^H z>
  CHECK(std::abs(lhs - rhs) <= 1e-12 * x.values.norm() * z.norm());
}

TEST_CASE("pinv_apply undoes forward and matches the dense SVD oracle") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const Signal x = random_signal(8, 100 + seed);
    MeasurementOperator op(make_masks(8, 2, seed), x.shape);
    const CVec z = op.forward(x);
    const CVec back = op.pinv_apply(z);
    CHECK((back - x.values).norm() < 1e-10 * x.values.norm());

    const CMat apinv = test::dense_pinv(test::dense_operator(op));
    Rng rng(200 + seed);
    CVec w(op.n());
    for (int i = 0; i < op.n(); ++i) w[i] = rng.complex_gaussian();
    const CVec lib = op.pinv_apply(w);
    const CVec oracle = apinv * w;
    CHECK((lib - oracle).norm() < 1e-10 * oracle.norm());
  }
}

TEST_CASE("pinv_apply equals adjoint for a unitary operator") {
  MeasurementOperator op(all_ones_mask(6), SignalShape::one_d(6));
  Rng rng(41);
  CVec z(6);
  for (int i = 0; i < 6; ++i) z[i] = rng.complex_gaussian();
  CHECK((op.pinv_apply(z) - op.adjoint(z)).norm() < 1e-14);
}

TEST_CASE("pinv_apply annihilates null(A^H)") {
  MeasurementOperator op(make_masks(2, 2, 5), SignalShape::one_d(2));
  const CMat a = test::dense_operator(op);
  // Null space of A^H = orthogonal complement of range(A), via full SVD.
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullU);
  const CVec null_vec = svd.matrixU().col(3);  // p = 2, n = 4: columns 2,3
  CHECK((a.adjoint() * null_vec).norm() < 1e-12);
  CHECK(op.pinv_apply(null_vec).norm() < 1e-10);
}

TEST_CASE("projector_apply is idempotent, fixes range vectors, matches oracle") {
  MeasurementOperator op(make_masks(3, 2, 6), SignalShape::one_d(3));
  Rng rng(51);
  CVec z(6);
  for (int i = 0; i < 6; ++i) z[i] = rng.complex_gaussian();

  const CVec pz = op.projector_apply(z);
  CHECK((op.projector_apply(pz) - pz).norm() < 1e-10);

  const Signal x = random_signal(3, 52);
  const CVec ax = op.forward(x);
  CHECK((op.projector_apply(ax) - ax).norm() < 1e-10 * ax.norm());

  const CMat a = test::dense_operator(op);
  const CMat proj = a * test::dense_pinv(a);
  CMat lib(6, 6);
  for (int j = 0; j < 6; ++j) {
    CVec e = CVec::Zero(6);
    e[j] = 1.0;
    lib.col(j) = op.projector_apply(e);
  }
  CHECK((lib - proj).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("projector_apply is self-adjoint under random inner products") {
  MeasurementOperator op(make_masks(5, 2, 61), SignalShape::one_d(5));
  Rng rng(62);
  CVec a(10), b(10);
  for (int i = 0; i < 10; ++i) {
    a[i] = rng.complex_gaussian();
    b[i] = rng.complex_gaussian();
  }
  const Complex lhs = op.projector_apply(a).dot(b);
  const Complex rhs = a.dot(op.projector_apply(b));
  CHECK(std::abs(lhs - rhs) < 1e-10 * a.norm() * b.norm());
}

TEST_CASE("phase_of extracts unit phases and flags tiny entries") {
  SUBCASE("plain real entries") {
    CVec z(2);
    z << Complex(3, 0), Complex(-2, 0);
    const PhaseVector u = phase_of(z);
    CHECK(std::abs(u.values[0] - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(u.values[1] - Complex(-1, 0)) < 1e-15);
    CHECK_FALSE(u.degenerate[0]);
    CHECK_FALSE(u.degenerate[1]);
  }
  SUBCASE("zero entry falls back to 1 with a flag") {
    CVec z(2);
    z << Complex(0, 0), Complex(0, 5);
    const PhaseVector u = phase_of(z);
    CHECK(u.values[0] == Complex(1, 0));
    CHECK(u.degenerate[0]);
    CHECK(std::abs(u.values[1] - Complex(0, 1)) < 1e-15);
    CHECK_FALSE(u.degenerate[1]);
  }
  SUBCASE("identically zero input is all-degenerate") {
    const PhaseVector u = phase_of(CVec::Zero(4));
    CHECK(u.all_degenerate());
  }
}

TEST_CASE("polar identity: diag(u) |z| reproduces z") {
  const Signal x = random_signal(8, 71);
  MeasurementOperator op(make_masks(8, 2, 72), x.shape);
  const CVec z = op.forward(x);
  const PhaseVector u = phase_of(z);
  const CVec rebuilt = u.values.cwiseProduct(z.cwiseAbs().cast<Complex>());
  for (int i = 0; i < op.n(); ++i)
    if (!u.degenerate[i]) CHECK(std::abs(rebuilt[i] - z[i]) <= 1e-12 * std::abs(z[i]));
}

TEST_CASE("unit moduli hold for every non-degenerate phase entry") {
  Rng rng(81);
  CVec z(16);
  for (int i = 0; i < 16; ++i) z[i] = rng.complex_gaussian();
  const PhaseVector u = phase_of(z);
  for (int i = 0; i < 16; ++i) CHECK(std::abs(std::abs(u.values[i]) - 1.0) < 1e-12);
}

TEST_CASE("operator rejects length mismatches") {
  MeasurementOperator op(make_masks(4, 2, 91), SignalShape::one_d(4));
  CHECK_THROWS_AS(op.forward_values(CVec::Zero(5)), DimensionError);
  CHECK_THROWS_AS(op.adjoint(CVec::Zero(7)), DimensionError);
  CHECK_THROWS_AS(
      op.forward(Signal(CVec::Zero(6), SignalShape::one_d(6))), DimensionError);
}

TEST_CASE("pinv consistency holds across seeds") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Signal x = random_signal(16, 300 + seed);
    MeasurementOperator op(make_masks(16, 3, seed), x.shape);
    const CVec back = op.pinv_apply(op.forward(x));
    CHECK((back - x.values).norm() < 1e-10 * x.values.norm());
  }
}
