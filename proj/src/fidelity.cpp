#include "qfid/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qfid/errors.hpp"
#include "qfid/geomean.hpp"

namespace qfid {

namespace {

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("fidelity: dimension mismatch");
}

void require_pd(const HermMat& h, const char* what) {
  if (!is_positive_definite(h)) throw SingularInput(std::string(what) + " requires positive definite states",
                                                    eigenvalues(h).front());
}

// <u|H|u>, real for Hermitian H.
double expectation(const HermMat& h, std::span<const cplx> u) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) s += std::conj(u[i]) * h(i, j) * u[j];
  return s.real();
}

std::vector<cplx> normalized(std::span<const cplx> v) {
  double n2 = 0.0;
  for (const cplx& z : v) n2 += std::norm(z);
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-10) throw InvalidState("state vector is not normalised");
  std::vector<cplx> out(v.begin(), v.end());
  for (auto& z : out) z /= std::sqrt(n2);
  return out;
}

}  // namespace

double classical_fidelity(const ProbVector& p, const ProbVector& q) {
  if (p.size() != q.size()) throw InvalidArgument("classical_fidelity: length mismatch");
  double f = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) f += std::sqrt(p[i] * q[i]);
  return f;
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  return norm(sqrtm(rho).mat() * sqrtm(sigma).mat(), NormKind::trace);
}

double holevo_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  return (sqrtm(rho).mat() * sqrtm(sigma).mat()).trace().real();
}

double matsumoto_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  return geometric_mean(rho, sigma).trace();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const std::vector<double> lambda = eigenvalues(rho.herm() - sigma.herm());
  double s = 0.0;
  for (double l : lambda) s += std::abs(l);
  return 0.5 * s;
}

FidelityReport fidelity_report(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return {uhlmann_fidelity(rho, sigma), holevo_fidelity(rho, sigma), matsumoto_fidelity(rho, sigma),
          trace_distance(rho, sigma)};
}

FidelityTriple pure_state_fidelities(std::span<const cplx> psi, std::span<const cplx> phi) {
  if (psi.size() != phi.size()) throw InvalidArgument("pure_state_fidelities: dimension mismatch");
  const std::vector<cplx> a = normalized(psi), b = normalized(phi);
  cplx ov = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) ov += std::conj(a[i]) * b[i];
  const double m = std::min(1.0, std::abs(ov));
  return {m, m * m, m >= 1.0 - 1e-15 ? 1.0 : 0.0};
}

FidelityTriple pure_mixed_fidelities(const DensityMatrix& rho, std::span<const cplx> psi) {
  if (psi.size() != rho.dim()) throw InvalidArgument("pure_mixed_fidelities: dimension mismatch");
  require_pd(rho, "pure_mixed_fidelities");
  const std::vector<cplx> u = normalized(psi);
  return {std::sqrt(expectation(rho, u)), expectation(sqrtm(rho), u), 1.0 / std::sqrt(expectation(invm(rho), u))};
}

double alberti_objective(const DensityMatrix& rho, const DensityMatrix& sigma, const HermMat& tau) {
  require_same_dim(rho, sigma);
  if (tau.dim() != rho.dim()) throw InvalidArgument("alberti_objective: dimension mismatch");
  return hs_inner(tau.mat(), rho.mat()) * hs_inner(invm(tau).mat(), sigma.mat());
}

HermMat uhlmann_gradient(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  require_pd(rho, "uhlmann_gradient");
  require_pd(sigma, "uhlmann_gradient");
  return 0.5 * geometric_mean_pd(invm(rho), sigma);
}

void Povm::validate() const {
  if (elements.empty()) throw InvalidState("POVM has no elements");
  const std::size_t n = elements.front().dim();
  HermMat sum = HermMat::zeros(n);
  for (const auto& e : elements) {
    if (e.dim() != n) throw InvalidState("POVM elements differ in dimension");
    if (!psd_check(e)) throw InvalidState("POVM element is not positive semidefinite");
    sum += e;
  }
  if (frobenius((sum - HermMat::identity(n)).mat()) > 1e-10) throw InvalidState("POVM elements do not sum to I");
}

ProbVector measure(const Povm& povm, const DensityMatrix& rho) {
  std::vector<double> p;
  p.reserve(povm.elements.size());
  for (const auto& e : povm.elements) p.push_back(hs_inner(e.mat(), rho.mat()));
  // Born probabilities sum to tr(rho) = 1 up to roundoff; absorb it.
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x = std::max(0.0, x / s);
  return ProbVector(std::move(p));
}

OptimalMeasurement optimal_povm(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  require_pd(rho, "optimal_povm");
  require_pd(sigma, "optimal_povm");
  const EigenDecomposition ed = eig_herm(geometric_mean_pd(invm(rho), sigma));
  Povm povm;
  for (std::size_t k = 0; k < rho.dim(); ++k) {
    const std::vector<cplx> v = ed.vectors.col(k);
    povm.elements.push_back(HermMat::projector(v));
  }
  ProbVector p = measure(povm, rho);
  ProbVector q = measure(povm, sigma);
  return {std::move(povm), std::move(p), std::move(q)};
}

RotationResult matsumoto_via_rotation(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  require_pd(rho, "matsumoto_via_rotation");
  require_pd(sigma, "matsumoto_via_rotation");
  const CMatrix u = inv_sqrtm(rho).mat() * geometric_mean_pd(sigma, rho).mat() * inv_sqrtm(sigma).mat();
  UnitaryMatrix unitary(u, 1e-10);
  const DensityMatrix rotated = renormalized(sigma.herm().congruence(u));
  const double value = uhlmann_fidelity(rho, rotated);
  return {std::move(unitary), value};
}

DensityMatrix renormalized(const HermMat& h) {
  const PsdReport psd = psd_check(h);
  if (!psd.psd) throw InvalidState("matrix is not positive semidefinite (min eigenvalue " +
                                   std::to_string(psd.min_eigenvalue) + ")");
  const double tr = h.trace();
  if (!(tr > 0.0)) throw InvalidState("matrix has nonpositive trace");
  HermMat out = h * (1.0 / tr);
  if (psd.min_eigenvalue < 0.0) {
    // Clip roundoff-level negative eigenvalues so the result passes the PSD invariant.
    EigenDecomposition ed = eig_herm(out);
    for (double& l : ed.values) l = std::max(l, 0.0);
    CMatrix vd = ed.vectors;
    for (std::size_t i = 0; i < vd.rows(); ++i)
      for (std::size_t j = 0; j < vd.cols(); ++j) vd(i, j) *= ed.values[j];
    out = HermMat(vd * ed.vectors.adjoint());
    out *= 1.0 / out.trace();
  }
  return DensityMatrix(std::move(out));
}

}  // namespace qfid
