#include "qfid/geomean.hpp"

#include <cmath>

#include "qfid/errors.hpp"

namespace qfid {

RegularizationSchedule RegularizationSchedule::standard() {
  return {{1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9}, 1e-7};
}

void RegularizationSchedule::validate() const {
  if (eps_values.empty()) throw InvalidArgument("regularization schedule is empty");
  for (std::size_t k = 0; k < eps_values.size(); ++k) {
    if (!(eps_values[k] > 0.0)) throw InvalidArgument("regularization values must be positive");
    if (k > 0 && !(eps_values[k] < eps_values[k - 1]))
      throw InvalidArgument("regularization values must be strictly decreasing");
  }
  if (eps_values.back() < 1e-12) throw InvalidArgument("smallest regularization value is below 1e-12");
  if (!(convergence_tol > 0.0)) throw InvalidArgument("convergence tolerance must be positive");
}

HermMat geometric_mean_pd(const HermMat& a, const HermMat& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("geometric_mean: dimension mismatch");
  const HermMat a_half = sqrtm(a);
  const HermMat a_inv_half = inv_sqrtm(a);
  const HermMat inner = b.congruence(a_inv_half.mat());
  return sqrtm(inner).congruence(a_half.mat());
}

namespace {

// Pseudo-inverse on the numerically resolved image.
HermMat pinv(const HermMat& h) {
  const EigenDecomposition ed = eig_herm(h);
  const double lmax = ed.values.back();
  std::vector<double> f(ed.values.size(), 0.0);
  for (std::size_t k = 0; k < f.size(); ++k)
    if (ed.values[k] > kRankTol * lmax) f[k] = 1.0 / ed.values[k];
  CMatrix vd = ed.vectors;
  for (std::size_t i = 0; i < vd.rows(); ++i)
    for (std::size_t j = 0; j < vd.cols(); ++j) vd(i, j) *= f[j];
  return HermMat(vd * ed.vectors.adjoint());
}

// Short of H onto span(Q) for Image(H) ⊇ span(Q): (Q^H H^+ Q)^{-1}, in Q coordinates.
HermMat short_onto(const HermMat& h, const CMatrix& q) {
  return invm(HermMat(q.adjoint() * pinv(h).mat() * q));
}

}  // namespace

HermMat geometric_mean(const HermMat& a, const HermMat& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("geometric_mean: dimension mismatch");
  const PsdReport pa = psd_check(a), pb = psd_check(b);
  if (!pa.psd || !pb.psd)
    throw InvalidState("geometric_mean: inputs must be positive semidefinite (min eigenvalues " +
                       std::to_string(pa.min_eigenvalue) + ", " + std::to_string(pb.min_eigenvalue) + ")");
  if (is_positive_definite(a) && is_positive_definite(b)) return geometric_mean_pd(a, b);
  if (image_intersection_trivial(a, b)) return HermMat::zeros(a.dim());

  const CMatrix q = image_intersection_basis(a, b);
  if (q.cols() == 0) return HermMat::zeros(a.dim());
  const HermMat mean_s = geometric_mean_pd(short_onto(a, q), short_onto(b, q));
  return mean_s.congruence(q);
}

HermMat geometric_mean_eps_path(const HermMat& a, const HermMat& b, const RegularizationSchedule& schedule) {
  schedule.validate();
  if (a.dim() != b.dim()) throw InvalidArgument("geometric_mean: dimension mismatch");
  HermMat prev = geometric_mean_pd(a.shifted(schedule.eps_values.front()), b.shifted(schedule.eps_values.front()));
  double gap = INFINITY;
  for (std::size_t k = 1; k < schedule.eps_values.size(); ++k) {
    const double eps = schedule.eps_values[k];
    HermMat cur = geometric_mean_pd(a.shifted(eps), b.shifted(eps));
    gap = frobenius((cur - prev).mat());
    if (gap < schedule.convergence_tol) return cur;
    prev = std::move(cur);
  }
  throw ConvergenceError("geometric mean eps path did not converge (last gap " + std::to_string(gap) + ")", gap);
}

bool maximality_witness(const HermMat& a, const HermMat& b, const HermMat& w) {
  return psd_check(block_matrix(a, w.mat(), b)).psd;
}

}  // namespace qfid
