#pragma once

#include <string>

#include "magcut/measurement.hpp"
#include "magcut/signal.hpp"

namespace magcut {

struct CostMatrixOptions {
  int max_n = 4096;          // dense-storage cap
  bool validate = true;      // structural checks after construction
  int spectrum_check_max_n = 512;  // eigenvalue checks only below this size
  double trace_tol = 1e-9;   // |Tr - (n-p)| <= trace_tol * n
  double psd_tol = 1e-9;     // lambda_min >= -psd_tol * lambda_max
  double symmetry_tol = 1e-12;
  double diag_tol = 1e-12;   // diagonal within [-tol, 1+tol]
};

/// Re(M) with M = diag(conj(u)) (I - A A^+) diag(u): real, symmetric,
/// positive semidefinite, with Tr = n - p and a null space containing the
/// true measurement magnitudes when u comes from an exact measurement.
struct CostMatrix {
  RMat entries;
  int n = 0;
  int p = 0;  // expected rank deficiency of entries

  CostMatrix() = default;
  CostMatrix(RMat e, int p_);
};

/// Builds Re(M) column by column: one projector application per canonical
/// vector scaled by the observed phase. Fails with CapacityError beyond
/// opts.max_n and with NumericalError if a structural invariant breaks.
CostMatrix build_cost_matrix(const MeasurementOperator& op, const PhaseVector& u,
                             const CostMatrixOptions& opts = {});

/// Witness of the real-embedding identity: Re Tr(B M) equals Tr(B Re(M))
/// for real symmetric B and Hermitian M. Test-support predicate.
bool real_embedding_check(const RMat& B, const CMat& M, double rel_tol = 1e-10);

/// CSV dump/load of the entries, intended for n <= 256 instances.
void dump_cost_matrix_csv(const CostMatrix& cm, const std::string& path);
CostMatrix load_cost_matrix_csv(const std::string& path, int p);

}  // namespace magcut
