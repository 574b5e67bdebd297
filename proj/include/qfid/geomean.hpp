#pragma once

// Matrix geometric mean A#B of positive semidefinite matrices.

#include <vector>

#include "qfid/linalg.hpp"

namespace qfid {

/// Decreasing regularization parameters for the eps -> 0 limit of
/// (A + eps I) # (B + eps I).
struct RegularizationSchedule {
  std::vector<double> eps_values;
  double convergence_tol = 1e-7;

  /// {1e-3, 1e-4, ..., 1e-9}, tol 1e-7.
  static RegularizationSchedule standard();
  /// Throws InvalidArgument unless strictly decreasing, positive, last >= 1e-12.
  void validate() const;
};

/// A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}; both inputs must be PD.
HermMat geometric_mean_pd(const HermMat& a, const HermMat& b);

/// A#B for PSD inputs.
///  - both PD: spectral formula;
///  - Image(A) ∩ Image(B) = {0}: exactly zero;
///  - otherwise: both operands are shorted onto S = Image(A) ∩ Image(B) and
///    the PD mean is taken there. This is the eps -> 0 limit, without its
///    sqrt(eps) convergence rate.
HermMat geometric_mean(const HermMat& a, const HermMat& b);

/// The eps path itself: evaluates (A+eps I)#(B+eps I) along the schedule and
/// stops once successive iterates differ by less than convergence_tol
/// (Frobenius). Throws ConvergenceError carrying the last gap otherwise.
HermMat geometric_mean_eps_path(const HermMat& a, const HermMat& b,
                                const RegularizationSchedule& schedule = RegularizationSchedule::standard());

/// Whether [[A, W], [W, B]] is PSD (within kPsdTol).
bool maximality_witness(const HermMat& a, const HermMat& b, const HermMat& w);

}  // namespace qfid
