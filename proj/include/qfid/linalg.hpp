#pragma once

// Dense complex linear algebra for the small Hermitian matrices used across
// the library: a row-major complex matrix, a Hermitian refinement of it, the
// Jacobi eigen/singular-value solvers, spectral functions and PSD tests.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qfid {

using cplx = std::complex<double>;

// Scale-relative tolerances, multiplied by max(1, ||H||_op) where they apply.
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kPdTol = 1e-9;
inline constexpr double kRankTol = 1e-9;
// Maximum entrywise asymmetry accepted when reading a Hermitian matrix.
inline constexpr double kHermitianInputTol = 1e-9;

/// Dense row-major complex matrix. std::complex<double> storage is the
/// interleaved (re, im) layout.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);
  /// Row-wise literal, e.g. CMatrix{{1, 0}, {0, 1}}.
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
  static CMatrix diagonal(std::span<const double> d);
  static CMatrix diagonal(std::span<const cplx> d);
  /// Column vector from entries.
  static CMatrix column(std::span<const cplx> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conj() const;
  cplx trace() const;
  std::vector<cplx> col(std::size_t j) const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(CMatrix a) { return a *= -1.0; }

  bool operator==(const CMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Square Hermitian matrix. Construction from a general matrix hermitizes it
/// as (M + M^H)/2, so entries(i,j) == conj(entries(j,i)) holds exactly.
class HermMat {
 public:
  HermMat() = default;
  explicit HermMat(const CMatrix& m);
  explicit HermMat(std::initializer_list<std::initializer_list<cplx>> rows)
      : HermMat(CMatrix(rows)) {}

  /// Rejects matrices whose entrywise asymmetry exceeds tol (ParseError).
  static HermMat checked(const CMatrix& m, double tol = kHermitianInputTol);
  static HermMat identity(std::size_t n) { return HermMat(CMatrix::identity(n)); }
  static HermMat zeros(std::size_t n) { return HermMat(CMatrix(n, n)); }
  static HermMat diagonal(std::span<const double> d) { return HermMat(CMatrix::diagonal(d)); }
  static HermMat diagonal(std::initializer_list<double> d);
  /// |v><v| (no normalisation).
  static HermMat projector(std::span<const cplx> v);

  std::size_t dim() const noexcept { return m_.rows(); }
  const CMatrix& mat() const noexcept { return m_; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  HermMat& operator+=(const HermMat& o);
  HermMat& operator-=(const HermMat& o);
  HermMat& operator*=(double s);
  friend HermMat operator+(HermMat a, const HermMat& b) { return a += b; }
  friend HermMat operator-(HermMat a, const HermMat& b) { return a -= b; }
  friend HermMat operator*(HermMat a, double s) { return a *= s; }
  friend HermMat operator*(double s, HermMat a) { return a *= s; }

  /// X H X^H, hermitized.
  HermMat congruence(const CMatrix& x) const;
  /// H + eps I.
  HermMat shifted(double eps) const;

 private:
  CMatrix m_;
};

/// Density matrix: PSD within kPsdTol (scale-relative) and unit trace within 1e-12.
class DensityMatrix {
 public:
  /// Validates; throws InvalidState on violation.
  explicit DensityMatrix(HermMat m);
  /// |psi><psi| for a unit vector (validated to 1e-10).
  static DensityMatrix pure(std::span<const cplx> psi);
  /// (H + eps I) / (1 + n eps) for a PSD unit-trace H.
  DensityMatrix regularized(double eps) const;

  std::size_t dim() const noexcept { return m_.dim(); }
  const HermMat& herm() const noexcept { return m_; }
  const CMatrix& mat() const noexcept { return m_.mat(); }
  operator const HermMat&() const noexcept { return m_; }

 private:
  HermMat m_;
};

/// Unitary within ||U^H U - I||_F <= 1e-12 * dim.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(CMatrix u, double tol_per_dim = 1e-12);
  std::size_t dim() const noexcept { return u_.rows(); }
  const CMatrix& mat() const noexcept { return u_; }
  operator const CMatrix&() const noexcept { return u_; }

 private:
  CMatrix u_;
};

/// Nonnegative entries summing to 1 within 1e-12. Entries in [-1e-12, 0)
/// are clamped to zero.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> p);
  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const noexcept { return p_; }

 private:
  std::vector<double> p_;
};

// ---------------------------------------------------------------------------
// Spectral machinery

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // columns are eigenvectors
};

/// Cyclic complex Jacobi. Throws ConvergenceError after 100 sweeps.
EigenDecomposition eig_herm(const HermMat& h);
std::vector<double> eigenvalues(const HermMat& h);

struct SvdResult {
  std::vector<double> values;  // descending, one per column
  CMatrix right;               // V with M V = U diag(values) (cols x cols)
};

/// One-sided (Hestenes) Jacobi SVD. Singular values come out with high
/// relative accuracy, so exact zeros stay at roundoff level.
SvdResult svd_jacobi(const CMatrix& m);
std::vector<double> singular_values(const CMatrix& m);

enum class SpectralFn { sqrt, inv_sqrt, log, inv, power };

/// V diag(f(lambda)) V^H, hermitized. The exponent is used by SpectralFn::power.
/// sqrt/power(t>0) need a PSD input; inv/inv_sqrt/log/power(t<=0) need PD
/// (min eigenvalue > kPdTol scale) and throw SingularInput otherwise.
HermMat matrix_function(const HermMat& h, SpectralFn f, double exponent = 1.0);
inline HermMat sqrtm(const HermMat& h) { return matrix_function(h, SpectralFn::sqrt); }
inline HermMat inv_sqrtm(const HermMat& h) { return matrix_function(h, SpectralFn::inv_sqrt); }
inline HermMat logm(const HermMat& h) { return matrix_function(h, SpectralFn::log); }
inline HermMat invm(const HermMat& h) { return matrix_function(h, SpectralFn::inv); }
inline HermMat powm(const HermMat& h, double t) { return matrix_function(h, SpectralFn::power, t); }

struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
  explicit operator bool() const noexcept { return psd; }
};

/// True iff min eigenvalue >= -tol * max(1, ||H||_op).
PsdReport psd_check(const HermMat& h, double tol = kPsdTol);
/// True iff min eigenvalue > tol * max(1, ||H||_op).
bool is_positive_definite(const HermMat& h, double tol = kPdTol);

/// [[a, x], [x^H, b]].
HermMat block_matrix(const HermMat& a, const CMatrix& x, const HermMat& b);

/// Whether [[A, X], [X^H, B]] is PSD. Uses the Schur complement A - X B^-1 X^H
/// when B is positive definite, the full 2n x 2n eigenvalue test otherwise.
bool schur_feasibility(const HermMat& a, const CMatrix& x, const HermMat& b, double tol = kPsdTol);

enum class NormKind { trace, frobenius, operator_norm };
double norm(const CMatrix& m, NormKind kind);
inline double frobenius(const CMatrix& m) { return norm(m, NormKind::frobenius); }

enum class ComposeMode { kron, dirsum };
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix dirsum(const CMatrix& a, const CMatrix& b);
HermMat compose(const HermMat& a, const HermMat& b, ComposeMode mode);

/// Orthonormal basis (columns) of Image(H) for PSD H, eigenvalues above
/// kRankTol * lambda_max.
CMatrix image_basis(const HermMat& h);
/// Orthonormal basis of Image(A) ∩ Image(B); zero columns when trivial.
CMatrix image_intersection_basis(const HermMat& a, const HermMat& b);
/// Image(A) ∩ Image(B) == {0}, via rank([U_A | U_B]) == rank A + rank B.
bool image_intersection_trivial(const HermMat& a, const HermMat& b);

/// Lower-triangular L with H = L L^H; throws SingularInput when not PD.
CMatrix cholesky(const HermMat& h);
/// Solves L Y = B for lower-triangular L.
CMatrix solve_lower(const CMatrix& l, const CMatrix& b);

/// Re tr(A^H B).
double hs_inner(const CMatrix& a, const CMatrix& b);

}  // namespace qfid
