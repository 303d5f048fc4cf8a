#include "magcut/cost_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace magcut {

CostMatrix::CostMatrix(RMat e, int p_) : entries(std::move(e)), p(p_) {
  if (entries.rows() != entries.cols())
    throw DimensionError("cost matrix must be square");
  n = static_cast<int>(entries.rows());
}

namespace {

void validate_cost_matrix(const CostMatrix& cm, double max_asymmetry,
                          const CostMatrixOptions& opts) {
  const int n = cm.n;
  if (max_asymmetry > opts.symmetry_tol)
    throw NumericalError("cost matrix asymmetry exceeds tolerance");

  const double trace = cm.entries.trace();
  const double expected = static_cast<double>(n - cm.p);
  if (std::abs(trace - expected) > opts.trace_tol * n)
    throw NumericalError("cost matrix trace deviates from n - p");

  const double dmin = cm.entries.diagonal().minCoeff();
  const double dmax = cm.entries.diagonal().maxCoeff();
  if (dmin < -opts.diag_tol || dmax > 1.0 + opts.diag_tol)
    throw NumericalError("cost matrix diagonal outside [0, 1]");

  if (n <= opts.spectrum_check_max_n) {
    Eigen::SelfAdjointEigenSolver<RMat> es(cm.entries, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw NumericalError("cost matrix eigenvalue check failed");
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    // Absolute floor covers the zero matrix of m = 1, whose lambda_max is
    // itself rounding noise.
    if (lmin < -(opts.psd_tol * std::max(lmax, 0.0) + 1e-14 * n))
      throw NumericalError("cost matrix is not positive semidefinite");
  }
}

}  // namespace

CostMatrix build_cost_matrix(const MeasurementOperator& op, const PhaseVector& u,
                             const CostMatrixOptions& opts) {
  const int n = op.n();
  if (u.n() != n) throw DimensionError("phase vector length mismatch");
  if (n > opts.max_n)
    throw CapacityError("cost matrix dimension exceeds the dense-storage cap");

  RMat entries(n, n);
  CVec e = CVec::Zero(n);
  for (int j = 0; j < n; ++j) {
    e[j] = u.values[j];
    const CVec projected = op.projector_apply(e);
    // Column j of diag(conj(u)) (I - A A^+) diag(u).
    entries.col(j) = u.values.conjugate().cwiseProduct(e - projected).real();
    e[j] = Complex(0.0, 0.0);
  }

  const double max_asymmetry = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  CostMatrix cm(RMat(0.5 * (entries + entries.transpose())), op.p());
  if (opts.validate) validate_cost_matrix(cm, max_asymmetry, opts);
  return cm;
}

bool real_embedding_check(const RMat& B, const CMat& M, double rel_tol) {
  if (B.rows() != B.cols() || M.rows() != M.cols() || B.rows() != M.rows())
    throw DimensionError("real_embedding_check: dimension mismatch");
  // Tr(B M) = sum_ij B_ij M_ji; B is real so only M's transpose enters.
  const Complex full = (B.cast<Complex>() * M).trace();
  const double with_real_part = (B * M.real()).trace();
  const double a = full.real();
  const double b = with_real_part;
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) <= rel_tol * scale;
}

void dump_cost_matrix_csv(const CostMatrix& cm, const std::string& path) {
  if (cm.n > 256) throw CapacityError("cost matrix CSV dump limited to n <= 256");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  char buf[64];
  for (int i = 0; i < cm.n; ++i) {
    for (int j = 0; j < cm.n; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", cm.entries(i, j));
      out << buf << (j + 1 < cm.n ? "," : "");
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

CostMatrix load_cost_matrix_csv(const std::string& path, int p) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  RMat m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw IoError("ragged cost matrix CSV: " + path);
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return CostMatrix(std::move(m), p);
}

}  // namespace magcut
