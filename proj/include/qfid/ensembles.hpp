#pragma once

// Seeded random states, unitaries and channels for tests and the lemma suite.

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "qfid/linalg.hpp"

namespace qfid {

/// xoshiro256** seeded through splitmix64. Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;
  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  double uniform();      // [0, 1)
  double normal();       // N(0, 1)
  double exponential();  // Exp(1)
  cplx complex_normal();  // real and imaginary parts N(0, 1/2)

 private:
  std::uint64_t s_[4];
};

/// Independent sub-seed for stream `stream` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// rows x cols matrix of independent standard complex Gaussians.
CMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// G G^H / tr(G G^H) with G a dim x rank Ginibre matrix.
DensityMatrix random_density(std::size_t dim, std::size_t rank, Rng& rng);
DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);

/// Haar unitary: Gram-Schmidt of a Ginibre matrix (positive R diagonal).
UnitaryMatrix random_unitary(std::size_t dim, Rng& rng);
UnitaryMatrix random_unitary(std::size_t dim, std::uint64_t seed);

/// Haar-random unit vector.
std::vector<cplx> random_pure_state(std::size_t dim, Rng& rng);

/// Uniform point on the probability simplex (normalised exponentials).
std::vector<double> random_simplex(std::size_t n, Rng& rng);

/// Well-conditioned random PD matrix G G^H / dim + I / 10 (not unit trace).
HermMat random_pd(std::size_t dim, Rng& rng);

struct KrausChannel {
  std::vector<CMatrix> kraus_ops;
  /// Phi(X) = sum_i K_i X^T K_i^H: positive and trace preserving, not CP.
  bool pre_transpose = false;

  std::size_t dim_in() const { return kraus_ops.front().cols(); }
  std::size_t dim_out() const { return kraus_ops.front().rows(); }
  HermMat apply(const HermMat& x) const;
  /// Applies the map and renormalises roundoff; throws InvalidState if the output is not a state.
  DensityMatrix apply(const DensityMatrix& rho) const;
  /// ||sum_i K_i^H K_i - I||_F.
  double trace_preservation_residual() const;
  /// sum_ij Phi(|i><j|) ⊗ |i><j|; PSD iff the map is completely positive.
  HermMat choi() const;
};

KrausChannel random_channel(std::size_t dim, std::size_t kraus_count, bool ptp_only, Rng& rng);
KrausChannel random_channel(std::size_t dim, std::size_t kraus_count, bool ptp_only, std::uint64_t seed);

/// Shared Haar eigenbasis, independent uniform-simplex spectra.
std::pair<DensityMatrix, DensityMatrix> random_commuting_pair(std::size_t dim, Rng& rng);
std::pair<DensityMatrix, DensityMatrix> random_commuting_pair(std::size_t dim, std::uint64_t seed);

}  // namespace qfid
