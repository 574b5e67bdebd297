#pragma once

// Invariant Riemannian geometry of the positive definite cone, and the
// (alpha, r, theta, phi) chart for 2x2 positive definite matrices.

#include <functional>

#include "qfid/linalg.hpp"

namespace qfid {

/// tr(M^{-1} H1 M^{-1} H2) for PD M.
double metric_inner(const HermMat& m, const HermMat& h1, const HermMat& h2);

/// ||log(A^{-1/2} B A^{-1/2})||_F for PD A, B.
double spd_distance(const HermMat& a, const HermMat& b);

/// A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}; t = 1/2 is A#B.
HermMat geodesic_point(const HermMat& a, const HermMat& b, double t);

/// Length of t -> curve(t) on [t0, t1] under metric_inner: trapezoid rule on
/// `samples` points with central-difference tangents.
double path_length(const std::function<HermMat(double)>& curve, double t0, double t1, int samples = 1000);

struct QubitCoords {
  double alpha = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// U D U^H with U = e^{i phi sz} e^{i theta sy},
/// D = diag(e^{-(alpha + r)/sqrt2}, e^{-(alpha - r)/sqrt2}).
HermMat qubit_from_coords(const QubitCoords& c);

/// The alpha giving unit trace at radius r: sqrt2 * ln(2 cosh(r / sqrt2)).
double alpha_q(double r);

struct QubitChart {
  QubitCoords coords;
  bool degenerate = false;  // r == 0: theta, phi undefined and reported as 0
};

/// Inverse chart; r >= 0, theta in [0, pi/2], phi in [0, pi).
QubitChart coords_from_qubit(const HermMat& rho);

/// (1/2) ln((1 + x)/(1 - x)); DomainError unless |x| < 1 - 1e-15.
double guarded_arctanh(double x);

/// Radius along the hyperbolic geodesic joining (r0, 0) and (r0, dphi):
/// arctanh(tanh r0 / (cos phi - sin phi (cos dphi - 1)/sin dphi)).
double hyperbolic_geodesic_r(double phi, double r0, double dphi);

/// arctanh(tanh(r0) cos(dphi / 2)).
double midpoint_radius(double r0, double dphi);

/// f(dphi) = (1/2) cosh(arctanh(cos(dphi/2)) / sqrt2).
double fgm_asymptotic_prefactor(double dphi);
/// f(dphi) e^{-r0 / sqrt2}.
double fgm_asymptotic(double r0, double dphi);

/// Length of phi -> (r(phi), phi) under ds^2 = dr^2 + sinh^2(r) dphi^2, same
/// quadrature as path_length.
double hyperbolic_path_length(const std::function<double(double)>& r_of_phi, double phi0, double phi1,
                              int samples = 1000);

}  // namespace qfid
