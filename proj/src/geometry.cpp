#include "qfid/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qfid/errors.hpp"
#include "qfid/geomean.hpp"

namespace qfid {

namespace {

void require_pd(const HermMat& h, const char* what) {
  if (!is_positive_definite(h)) throw SingularInput(std::string(what) + " requires a positive definite matrix",
                                                    eigenvalues(h).front());
}

// Finite-difference derivative of f at t, central in the interior and
// one-sided at the ends of [lo, hi] so f is never evaluated outside it.
template <class F>
auto derivative(F&& f, double t, double lo, double hi) {
  const double h = 1e-6 * std::max(1.0, std::abs(t));
  const double a = std::max(lo, t - h), b = std::min(hi, t + h);
  return (f(b) - f(a)) * (1.0 / (b - a));
}

template <class Speed>
double trapezoid(Speed&& speed, double t0, double t1, int samples) {
  if (samples < 2) throw InvalidArgument("path length needs at least 2 samples");
  const double h = (t1 - t0) / (samples - 1);
  double sum = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double w = (k == 0 || k == samples - 1) ? 0.5 : 1.0;
    sum += w * speed(k == samples - 1 ? t1 : t0 + h * k);
  }
  return sum * std::abs(h);
}

}  // namespace

double metric_inner(const HermMat& m, const HermMat& h1, const HermMat& h2) {
  require_pd(m, "metric_inner");
  if (h1.dim() != m.dim() || h2.dim() != m.dim()) throw InvalidArgument("metric_inner: dimension mismatch");
  const CMatrix mi = invm(m).mat();
  return (mi * h1.mat() * mi * h2.mat()).trace().real();
}

double spd_distance(const HermMat& a, const HermMat& b) {
  require_pd(a, "spd_distance");
  require_pd(b, "spd_distance");
  const HermMat inner = b.congruence(inv_sqrtm(a).mat());
  return frobenius(logm(inner).mat());
}

HermMat geodesic_point(const HermMat& a, const HermMat& b, double t) {
  require_pd(a, "geodesic_point");
  require_pd(b, "geodesic_point");
  if (t == 0.0) return a;
  const HermMat inner = b.congruence(inv_sqrtm(a).mat());
  return powm(inner, t).congruence(sqrtm(a).mat());
}

double path_length(const std::function<HermMat(double)>& curve, double t0, double t1, int samples) {
  const double lo = std::min(t0, t1), hi = std::max(t0, t1);
  auto speed = [&](double t) {
    const HermMat d = derivative(curve, t, lo, hi);
    return std::sqrt(std::max(0.0, metric_inner(curve(t), d, d)));
  };
  return trapezoid(speed, t0, t1, samples);
}

HermMat qubit_from_coords(const QubitCoords& c) {
  const double s2 = std::numbers::sqrt2;
  const double d0 = std::exp(-(c.alpha + c.r) / s2);
  const double d1 = std::exp(-(c.alpha - c.r) / s2);
  const cplx ep = std::polar(1.0, c.phi);
  const double ct = std::cos(c.theta), st = std::sin(c.theta);
  // e^{i phi sz} e^{i theta sy} = diag(e^{i phi}, e^{-i phi}) [[cos, sin], [-sin, cos]]
  const CMatrix u{{ep * ct, ep * st}, {-std::conj(ep) * st, std::conj(ep) * ct}};
  const double d[2] = {d0, d1};
  return HermMat(CMatrix::diagonal(std::span<const double>(d, 2))).congruence(u);
}

double alpha_q(double r) { return std::numbers::sqrt2 * std::log(2.0 * std::cosh(r / std::numbers::sqrt2)); }

QubitChart coords_from_qubit(const HermMat& rho) {
  if (rho.dim() != 2) throw InvalidArgument("coords_from_qubit: expected a 2x2 matrix");
  require_pd(rho, "coords_from_qubit");
  const EigenDecomposition ed = eig_herm(rho);
  const double s2 = std::numbers::sqrt2;
  const double ls = ed.values[0], lb = ed.values[1];
  QubitChart out;
  out.coords.alpha = -(std::log(ls) + std::log(lb)) / s2;
  out.coords.r = (std::log(lb) - std::log(ls)) / s2;
  if (out.coords.r <= 1e-12) {
    out.coords.r = 0.0;
    out.degenerate = true;
    return out;
  }
  // First column of U is the small-eigenvalue eigenvector, up to a phase:
  // (e^{i phi} cos theta, -e^{-i phi} sin theta).
  const cplx v0 = ed.vectors(0, 0), v1 = ed.vectors(1, 0);
  out.coords.theta = std::atan2(std::abs(v1), std::abs(v0));
  const cplx w = -v0 * std::conj(v1);
  if (std::abs(w) > 1e-14) {
    double phi = 0.5 * std::arg(w);
    if (phi < 0.0) phi += std::numbers::pi;
    if (phi >= std::numbers::pi) phi -= std::numbers::pi;
    out.coords.phi = phi;
  }
  return out;
}

double guarded_arctanh(double x) {
  if (!(std::abs(x) < 1.0 - 1e-15)) throw DomainError("arctanh argument " + std::to_string(x) + " outside (-1, 1)");
  return 0.5 * std::log((1.0 + x) / (1.0 - x));
}

namespace {

// arctanh(x) as 0.5 log((1 + x) / (1 - x)) with 1 - x supplied separately:
// near the boundary (large r0) forming 1 - x from a rounded x loses ~1e-8.
double arctanh_split(double x, double one_minus_x) {
  if (!(std::abs(x) < 1.0 - 1e-15)) throw DomainError("arctanh argument " + std::to_string(x) + " outside (-1, 1)");
  return 0.5 * std::log((2.0 - one_minus_x) / one_minus_x);
}

double one_minus_tanh(double r) { return 2.0 / (std::exp(2.0 * r) + 1.0); }

}  // namespace

double hyperbolic_geodesic_r(double phi, double r0, double dphi) {
  if (!(r0 > 0.0)) throw InvalidArgument("hyperbolic_geodesic_r: r0 must be positive");
  if (!(dphi > 0.0) || !(dphi < std::numbers::pi)) throw InvalidArgument("hyperbolic_geodesic_r: dphi must lie in (0, pi)");
  if (phi < 0.0 || phi > dphi) throw InvalidArgument("hyperbolic_geodesic_r: phi outside [0, dphi]");
  // denom = cos(phi) - sin(phi)(cos(dphi) - 1)/sin(dphi), written as 1 + dm1.
  const double s = std::sin(0.5 * phi);
  const double dm1 = -2.0 * s * s + std::sin(phi) * std::tan(0.5 * dphi);
  const double denom = 1.0 + dm1;
  const double t = std::tanh(r0);
  const double x = t / denom;
  // 1 - x = (denom - t)/denom = (dm1 + (1 - t))/denom
  return arctanh_split(x, (dm1 + one_minus_tanh(r0)) / denom);
}

double midpoint_radius(double r0, double dphi) {
  if (!(r0 > 0.0)) throw InvalidArgument("midpoint_radius: r0 must be positive");
  const double t = std::tanh(r0);
  const double s = std::sin(0.25 * dphi);
  // 1 - t cos(dphi/2) = (1 - t) + 2 t sin^2(dphi/4)
  return arctanh_split(t * std::cos(0.5 * dphi), one_minus_tanh(r0) + 2.0 * t * s * s);
}

double fgm_asymptotic_prefactor(double dphi) {
  if (!(dphi > 0.0) || !(dphi < std::numbers::pi)) throw InvalidArgument("fgm_asymptotic: dphi must lie in (0, pi)");
  return 0.5 * std::cosh(guarded_arctanh(std::cos(dphi / 2.0)) / std::numbers::sqrt2);
}

double fgm_asymptotic(double r0, double dphi) {
  if (!(r0 > 0.0)) throw InvalidArgument("fgm_asymptotic: r0 must be positive");
  return fgm_asymptotic_prefactor(dphi) * std::exp(-r0 / std::numbers::sqrt2);
}

double hyperbolic_path_length(const std::function<double(double)>& r_of_phi, double phi0, double phi1, int samples) {
  const double lo = std::min(phi0, phi1), hi = std::max(phi0, phi1);
  auto speed = [&](double p) {
    const double dr = derivative(r_of_phi, p, lo, hi);
    const double sh = std::sinh(r_of_phi(p));
    return std::sqrt(dr * dr + sh * sh);
  };
  return trapezoid(speed, phi0, phi1, samples);
}

}  // namespace qfid
