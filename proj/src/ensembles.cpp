#include "qfid/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "qfid/errors.hpp"
#include "qfid/fidelity.hpp"

namespace qfid {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : s_) s = splitmix64(x);
}

Rng::result_type Rng::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(*this); }

double Rng::exponential() { return std::exponential_distribution<double>(1.0)(*this); }

cplx Rng::complex_normal() {
  const double s = std::numbers::sqrt2 / 2.0;
  const double re = normal();
  const double im = normal();
  return {s * re, s * im};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
  splitmix64(x);
  return splitmix64(x);
}

CMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  CMatrix g(rows, cols);
  for (auto& z : g.data()) z = rng.complex_normal();
  return g;
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, Rng& rng) {
  if (dim < 1 || rank < 1 || rank > dim) throw InvalidArgument("random_density: need 1 <= rank <= dim");
  const CMatrix g = random_ginibre(dim, rank, rng);
  HermMat w(g * g.adjoint());
  w *= 1.0 / w.trace();
  return renormalized(w);
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rank, rng);
}

namespace {

// Modified Gram-Schmidt, applied twice for orthogonality at roundoff level.
CMatrix orthonormalize_columns(CMatrix a) {
  const std::size_t n = a.rows(), m = a.cols();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        cplx d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += std::conj(a(i, k)) * a(i, j);
        for (std::size_t i = 0; i < n; ++i) a(i, j) -= d * a(i, k);
      }
      double nrm = 0.0;
      for (std::size_t i = 0; i < n; ++i) nrm += std::norm(a(i, j));
      nrm = std::sqrt(nrm);
      if (nrm == 0.0) throw InvalidState("orthonormalize: rank-deficient Gaussian sample");
      for (std::size_t i = 0; i < n; ++i) a(i, j) /= nrm;
    }
  }
  return a;
}

}  // namespace

UnitaryMatrix random_unitary(std::size_t dim, Rng& rng) {
  if (dim < 1) throw InvalidArgument("random_unitary: dim must be >= 1");
  return UnitaryMatrix(orthonormalize_columns(random_ginibre(dim, dim, rng)));
}

UnitaryMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

std::vector<cplx> random_pure_state(std::size_t dim, Rng& rng) {
  if (dim < 1) throw InvalidArgument("random_pure_state: dim must be >= 1");
  return orthonormalize_columns(random_ginibre(dim, 1, rng)).col(0);
}

std::vector<double> random_simplex(std::size_t n, Rng& rng) {
  std::vector<double> p(n);
  double s = 0.0;
  for (double& x : p) s += (x = rng.exponential());
  for (double& x : p) x /= s;
  return p;
}

HermMat random_pd(std::size_t dim, Rng& rng) {
  const CMatrix g = random_ginibre(dim, dim, rng);
  return HermMat(g * g.adjoint()) * (1.0 / static_cast<double>(dim)) + HermMat::identity(dim) * 0.1;
}

HermMat KrausChannel::apply(const HermMat& x) const {
  if (x.dim() != dim_in()) throw InvalidArgument("KrausChannel::apply: dimension mismatch");
  const CMatrix in = pre_transpose ? x.mat().transpose() : x.mat();
  CMatrix out(dim_out(), dim_out());
  for (const auto& k : kraus_ops) out += k * in * k.adjoint();
  return HermMat(out);
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const { return renormalized(apply(rho.herm())); }

double KrausChannel::trace_preservation_residual() const {
  CMatrix s(dim_in(), dim_in());
  for (const auto& k : kraus_ops) s += k.adjoint() * k;
  return frobenius(s - CMatrix::identity(dim_in()));
}

HermMat KrausChannel::choi() const {
  const std::size_t n = dim_in();
  CMatrix c(dim_out() * n, dim_out() * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      CMatrix eij(n, n);
      eij(i, j) = 1.0;
      const CMatrix in = pre_transpose ? eij.transpose() : eij;
      CMatrix img(dim_out(), dim_out());
      for (const auto& k : kraus_ops) img += k * in * k.adjoint();
      c += kron(img, eij);
    }
  return HermMat(c);
}

KrausChannel random_channel(std::size_t dim, std::size_t kraus_count, bool ptp_only, Rng& rng) {
  if (dim < 1 || kraus_count < 1) throw InvalidArgument("random_channel: need dim >= 1 and kraus_count >= 1");
  // Haar isometry V (dim*k x dim) cut into k blocks; sum K_i^H K_i = V^H V = I.
  const CMatrix v = random_unitary(dim * kraus_count, rng).mat();
  KrausChannel ch;
  ch.pre_transpose = ptp_only;
  for (std::size_t b = 0; b < kraus_count; ++b) {
    CMatrix k(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) k(i, j) = v(b * dim + i, j);
    ch.kraus_ops.push_back(std::move(k));
  }
  return ch;
}

KrausChannel random_channel(std::size_t dim, std::size_t kraus_count, bool ptp_only, std::uint64_t seed) {
  Rng rng(seed);
  return random_channel(dim, kraus_count, ptp_only, rng);
}

std::pair<DensityMatrix, DensityMatrix> random_commuting_pair(std::size_t dim, Rng& rng) {
  const CMatrix u = random_unitary(dim, rng).mat();
  const std::vector<double> p = random_simplex(dim, rng);
  const std::vector<double> q = random_simplex(dim, rng);
  const HermMat rho = HermMat::diagonal(p).congruence(u);
  const HermMat sigma = HermMat::diagonal(q).congruence(u);
  return {renormalized(rho), renormalized(sigma)};
}

std::pair<DensityMatrix, DensityMatrix> random_commuting_pair(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_commuting_pair(dim, rng);
}

}  // namespace qfid
