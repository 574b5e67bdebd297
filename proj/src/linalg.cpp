#include "qfid/linalg.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <string>

#include "qfid/errors.hpp"

namespace qfid {

// ---------------------------------------------------------------------------
// CMatrix

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw InvalidArgument("CMatrix: data size does not match shape");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("CMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::column(std::span<const cplx> v) {
  return CMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMatrix CMatrix::transpose() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CMatrix CMatrix::conj() const {
  CMatrix r = *this;
  for (auto& z : r.data_) z = std::conj(z);
  return r;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

std::vector<cplx> CMatrix::col(std::size_t j) const {
  std::vector<cplx> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("CMatrix +: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("CMatrix -: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidArgument("CMatrix *: inner dimension mismatch");
  CMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// HermMat and refinements

HermMat::HermMat(const CMatrix& m) : m_(m.rows(), m.cols()) {
  if (!m.square()) throw InvalidArgument("HermMat: matrix is not square");
  if (m.rows() == 0) throw InvalidArgument("HermMat: dimension must be >= 1");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    m_(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(i, j) = v;
      m_(j, i) = std::conj(v);
    }
  }
}

HermMat HermMat::checked(const CMatrix& m, double tol) {
  if (!m.square() || m.rows() == 0) throw ParseError("matrix must be square with dim >= 1");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) {
      const double asym = std::abs(m(i, j) - std::conj(m(j, i)));
      if (asym > tol)
        throw ParseError("matrix is not Hermitian: entry (" + std::to_string(i) + "," +
                         std::to_string(j) + ") asymmetry " + std::to_string(asym));
    }
  return HermMat(m);
}

HermMat HermMat::diagonal(std::initializer_list<double> d) {
  std::vector<double> v(d);
  return HermMat(CMatrix::diagonal(std::span<const double>(v)));
}

HermMat HermMat::projector(std::span<const cplx> v) {
  CMatrix p(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) p(i, j) = v[i] * std::conj(v[j]);
  return HermMat(p);
}

HermMat& HermMat::operator+=(const HermMat& o) {
  m_ += o.m_;
  return *this;
}

HermMat& HermMat::operator-=(const HermMat& o) {
  m_ -= o.m_;
  return *this;
}

HermMat& HermMat::operator*=(double s) {
  m_ *= s;
  return *this;
}

HermMat HermMat::congruence(const CMatrix& x) const { return HermMat(x * m_ * x.adjoint()); }

HermMat HermMat::shifted(double eps) const {
  CMatrix r = m_;
  for (std::size_t i = 0; i < dim(); ++i) r(i, i) += eps;
  return HermMat(r);
}

DensityMatrix::DensityMatrix(HermMat m) : m_(std::move(m)) {
  const PsdReport psd = psd_check(m_);
  if (!psd.psd)
    throw InvalidState("density matrix is not positive semidefinite (min eigenvalue " +
                       std::to_string(psd.min_eigenvalue) + ")");
  const double tr = m_.trace();
  if (std::abs(tr - 1.0) > 1e-12)
    throw InvalidState("density matrix trace is " + std::to_string(tr) + ", expected 1");
}

DensityMatrix DensityMatrix::pure(std::span<const cplx> psi) {
  double nrm2 = 0.0;
  for (const cplx& z : psi) nrm2 += std::norm(z);
  if (std::abs(std::sqrt(nrm2) - 1.0) > 1e-10) throw InvalidState("pure state vector is not normalised");
  // Renormalise away the residual so the trace lands within 1e-12.
  std::vector<cplx> v(psi.begin(), psi.end());
  for (auto& z : v) z /= std::sqrt(nrm2);
  return DensityMatrix(HermMat::projector(v));
}

DensityMatrix DensityMatrix::regularized(double eps) const {
  if (eps < 0.0) throw InvalidArgument("regularization must be nonnegative");
  return DensityMatrix(m_.shifted(eps) * (1.0 / (1.0 + static_cast<double>(dim()) * eps)));
}

UnitaryMatrix::UnitaryMatrix(CMatrix u, double tol_per_dim) : u_(std::move(u)) {
  if (!u_.square()) throw InvalidState("unitary must be square");
  const double err = frobenius(u_.adjoint() * u_ - CMatrix::identity(u_.rows()));
  if (err > tol_per_dim * static_cast<double>(u_.rows()))
    throw InvalidState("matrix is not unitary (||U^H U - I||_F = " + std::to_string(err) + ")");
}

ProbVector::ProbVector(std::vector<double> p) : p_(std::move(p)) {
  double sum = 0.0;
  for (double& x : p_) {
    if (x < -1e-12 || !std::isfinite(x)) throw InvalidState("probability vector has a negative entry");
    x = std::max(x, 0.0);
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidState("probability vector does not sum to 1");
}

// ---------------------------------------------------------------------------
// Jacobi solvers

namespace {

struct Rotation {
  double c;
  double s;
  cplx phase_conj;  // e^{-i phi} of the off-diagonal entry
  double t;
};

// Rotation annihilating the off-diagonal entry of [[app, apq], [conj(apq), aqq]].
// G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] gives G^H B G diagonal.
Rotation jacobi_rotation(double app, double aqq, cplx apq) {
  const double a = std::abs(apq);
  const cplx pc = std::conj(apq) / a;
  const double theta = (aqq - app) / (2.0 * a);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  return {c, t * c, pc, t};
}

}  // namespace

EigenDecomposition eig_herm(const HermMat& h) {
  const std::size_t n = h.dim();
  CMatrix a = h.mat();
  CMatrix v = CMatrix::identity(n);
  const double norm_f = frobenius(a);
  constexpr int kMaxSweeps = 100;

  auto off_norm = [&] {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    return std::sqrt(2.0 * off);
  };

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    const double off = off_norm();
    if (off <= 1e-16 * norm_f || off == 0.0) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
            std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const Rotation r = jacobi_rotation(app, aqq, apq);
        // A <- A G (columns p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = r.c * akp - r.s * r.phase_conj * akq;
          a(k, q) = r.s * akp + r.c * r.phase_conj * akq;
        }
        // A <- G^H A (rows p, q)
        const cplx ph = std::conj(r.phase_conj);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = r.c * apk - r.s * ph * aqk;
          a(q, k) = r.s * apk + r.c * ph * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - r.t * mag;
        a(q, q) = aqq + r.t * mag;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = r.c * vkp - r.s * r.phase_conj * vkq;
          v(k, q) = r.s * vkp + r.c * r.phase_conj * vkq;
        }
      }
    }
  }
  if (sweep == kMaxSweeps) {
    const double off = off_norm();
    if (off > 1e-14 * norm_f) throw ConvergenceError("Jacobi eigensolver did not converge", off);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  EigenDecomposition out{std::vector<double>(n), CMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> eigenvalues(const HermMat& h) { return eig_herm(h).values; }

SvdResult svd_jacobi(const CMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  CMatrix a = m;
  CMatrix v = CMatrix::identity(cols);
  constexpr int kMaxSweeps = 100;
  constexpr double kEps = 1e-15;

  double fro2 = 0.0;
  for (const cplx& z : a.data()) fro2 += std::norm(z);
  // Below this a column pair is orthogonal to working precision even when
  // one column is itself at roundoff level.
  const double abs_floor = 1e-32 * fro2;

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i < cols; ++i) {
      for (std::size_t j = i + 1; j < cols; ++j) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma = 0.0;
        for (std::size_t k = 0; k < rows; ++k) {
          alpha += std::norm(a(k, i));
          beta += std::norm(a(k, j));
          gamma += std::conj(a(k, i)) * a(k, j);
        }
        const double g = std::abs(gamma);
        if (g <= abs_floor || g <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Rotation r = jacobi_rotation(alpha, beta, gamma);
        for (std::size_t k = 0; k < rows; ++k) {
          const cplx ai = a(k, i), aj = a(k, j);
          a(k, i) = r.c * ai - r.s * r.phase_conj * aj;
          a(k, j) = r.s * ai + r.c * r.phase_conj * aj;
        }
        for (std::size_t k = 0; k < cols; ++k) {
          const cplx vi = v(k, i), vj = v(k, j);
          v(k, i) = r.c * vi - r.s * r.phase_conj * vj;
          v(k, j) = r.s * vi + r.c * r.phase_conj * vj;
        }
      }
    }
    if (!rotated) break;
  }
  if (sweep == kMaxSweeps) throw ConvergenceError("Jacobi SVD did not converge", 0.0);

  std::vector<double> sv(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < rows; ++k) s += std::norm(a(k, j));
    sv[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sv[i] > sv[j]; });
  SvdResult out{std::vector<double>(cols), CMatrix(cols, cols)};
  for (std::size_t k = 0; k < cols; ++k) {
    out.values[k] = sv[order[k]];
    for (std::size_t i = 0; i < cols; ++i) out.right(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> singular_values(const CMatrix& m) {
  if (m.rows() < m.cols()) return svd_jacobi(m.adjoint()).values;
  return svd_jacobi(m).values;
}

// ---------------------------------------------------------------------------
// Spectral functions and PSD tests

namespace {

double spectral_scale(const std::vector<double>& lambda) {
  double mx = 0.0;
  for (double l : lambda) mx = std::max(mx, std::abs(l));
  return mx;
}

HermMat rebuild(const CMatrix& vecs, const std::vector<double>& f) {
  const std::size_t n = f.size();
  CMatrix vd = vecs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) vd(i, j) *= f[j];
  return HermMat(vd * vecs.adjoint());
}

}  // namespace

HermMat matrix_function(const HermMat& h, SpectralFn f, double exponent) {
  EigenDecomposition ed = eig_herm(h);
  const std::size_t n = h.dim();
  const double op = spectral_scale(ed.values);
  const double scale = std::max(1.0, op);
  const double lmin = ed.values.front();
  const bool needs_pd = f == SpectralFn::inv_sqrt || f == SpectralFn::log || f == SpectralFn::inv ||
                        (f == SpectralFn::power && exponent < 0.0);
  if (needs_pd && lmin <= kPdTol * scale)
    throw SingularInput("matrix function requires a positive definite input", lmin);
  if (!needs_pd && lmin < -kPsdTol * scale)
    throw InvalidState("matrix function requires a positive semidefinite input (min eigenvalue " +
                       std::to_string(lmin) + ")");

  // Eigenvalues at roundoff level are not resolved by the solver; treat them as zero.
  const double floor = 4.0 * static_cast<double>(n) * DBL_EPSILON * op;
  std::vector<double> fv(n);
  for (std::size_t k = 0; k < n; ++k) {
    double l = ed.values[k];
    if (!needs_pd && l <= floor) l = 0.0;
    switch (f) {
      case SpectralFn::sqrt: fv[k] = std::sqrt(l); break;
      case SpectralFn::inv_sqrt: fv[k] = 1.0 / std::sqrt(l); break;
      case SpectralFn::log: fv[k] = std::log(l); break;
      case SpectralFn::inv: fv[k] = 1.0 / l; break;
      case SpectralFn::power: fv[k] = (exponent == 0.0) ? 1.0 : std::pow(l, exponent); break;
    }
  }
  return rebuild(ed.vectors, fv);
}

PsdReport psd_check(const HermMat& h, double tol) {
  const std::vector<double> lambda = eigenvalues(h);
  const double scale = std::max(1.0, spectral_scale(lambda));
  return {lambda.front() >= -tol * scale, lambda.front()};
}

bool is_positive_definite(const HermMat& h, double tol) {
  const std::vector<double> lambda = eigenvalues(h);
  const double scale = std::max(1.0, spectral_scale(lambda));
  return lambda.front() > tol * scale;
}

HermMat block_matrix(const HermMat& a, const CMatrix& x, const HermMat& b) {
  const std::size_t n = a.dim(), m = b.dim();
  if (x.rows() != n || x.cols() != m) throw InvalidArgument("block_matrix: off-diagonal block has wrong shape");
  CMatrix big(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) big(i, j) = a(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) big(n + i, n + j) = b(i, j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      big(i, n + j) = x(i, j);
      big(n + j, i) = std::conj(x(i, j));
    }
  return HermMat(big);
}

bool schur_feasibility(const HermMat& a, const CMatrix& x, const HermMat& b, double tol) {
  if (is_positive_definite(b)) {
    const HermMat complement = a - HermMat(x * invm(b).mat() * x.adjoint());
    return psd_check(complement, tol).psd;
  }
  return psd_check(block_matrix(a, x, b), tol).psd;
}

double norm(const CMatrix& m, NormKind kind) {
  switch (kind) {
    case NormKind::frobenius: {
      double s = 0.0;
      for (const cplx& z : m.data()) s += std::norm(z);
      return std::sqrt(s);
    }
    case NormKind::trace: {
      const auto sv = singular_values(m);
      return std::accumulate(sv.begin(), sv.end(), 0.0);
    }
    case NormKind::operator_norm: {
      const auto sv = singular_values(m);
      return sv.empty() ? 0.0 : sv.front();
    }
  }
  return 0.0;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

CMatrix dirsum(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

HermMat compose(const HermMat& a, const HermMat& b, ComposeMode mode) {
  return HermMat(mode == ComposeMode::kron ? kron(a.mat(), b.mat()) : dirsum(a.mat(), b.mat()));
}

// ---------------------------------------------------------------------------
// Images

CMatrix image_basis(const HermMat& h) {
  const EigenDecomposition ed = eig_herm(h);
  const std::size_t n = h.dim();
  const double lmax = ed.values.back();
  std::vector<std::size_t> keep;
  if (lmax > 0.0)
    for (std::size_t k = 0; k < n; ++k)
      if (ed.values[k] > kRankTol * lmax) keep.push_back(k);
  CMatrix basis(n, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) basis(i, c) = ed.vectors(i, keep[c]);
  return basis;
}

namespace {

CMatrix hstack(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

}  // namespace

bool image_intersection_trivial(const HermMat& a, const HermMat& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("image_intersection_trivial: dimension mismatch");
  const CMatrix ua = image_basis(a), ub = image_basis(b);
  const std::size_t ra = ua.cols(), rb = ub.cols();
  if (ra == 0 || rb == 0) return true;
  if (ra + rb > a.dim()) return false;
  const std::vector<double> sv = svd_jacobi(hstack(ua, ub)).values;
  std::size_t rank = 0;
  for (double s : sv)
    if (s > kRankTol * sv.front()) ++rank;
  return rank == ra + rb;
}

CMatrix image_intersection_basis(const HermMat& a, const HermMat& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("image_intersection_basis: dimension mismatch");
  const std::size_t n = a.dim();
  const CMatrix ua = image_basis(a), ub = image_basis(b);
  const std::size_t ra = ua.cols(), rb = ub.cols();
  if (ra == 0 || rb == 0) return CMatrix(n, 0);
  const SvdResult svd = svd_jacobi(hstack(ua, ub));
  const double smax = svd.values.front();

  std::vector<std::vector<cplx>> basis;
  for (std::size_t k = 0; k < ra + rb; ++k) {
    if (svd.values[k] > kRankTol * smax) continue;
    // Null vector (c_A, c_B) of [U_A | U_B]: x = U_A c_A lies in both images.
    std::vector<cplx> x(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < ra; ++j) x[i] += ua(i, j) * svd.right(j, k);
    for (const auto& q : basis) {
      cplx d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += std::conj(q[i]) * x[i];
      for (std::size_t i = 0; i < n; ++i) x[i] -= d * q[i];
    }
    double nrm = 0.0;
    for (const cplx& z : x) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-6) continue;
    for (auto& z : x) z /= nrm;
    basis.push_back(std::move(x));
  }
  CMatrix q(n, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) q(i, c) = basis[c][i];
  return q;
}

// ---------------------------------------------------------------------------
// Cholesky

CMatrix cholesky(const HermMat& h) {
  const std::size_t n = h.dim();
  CMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = h(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) throw SingularInput("cholesky: matrix is not positive definite", d);
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = h(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

CMatrix solve_lower(const CMatrix& l, const CMatrix& b) {
  const std::size_t n = l.rows();
  CMatrix y = b;
  for (std::size_t c = 0; c < b.cols(); ++c)
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = y(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y(k, c);
      y(i, c) = s / l(i, i);
    }
  return y;
}

double hs_inner(const CMatrix& a, const CMatrix& b) {
  double s = 0.0;
  const auto da = a.data(), db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) s += (std::conj(da[k]) * db[k]).real();
  return s;
}

}  // namespace qfid
