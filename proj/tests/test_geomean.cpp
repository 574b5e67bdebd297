#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qfid/ensembles.hpp"
#include "qfid/errors.hpp"
#include "qfid/geomean.hpp"

using namespace qfid;

TEST(GeometricMean, CommutingDiagonal) {
  const HermMat g = geometric_mean(HermMat::diagonal({1.0, 4.0}), HermMat::diagonal({4.0, 1.0}));
  EXPECT_LT(frobenius(g.mat() - HermMat::diagonal({2.0, 2.0}).mat()), 1e-14);
}

TEST(GeometricMean, MatchesOracleOnRandomPd) {
  Rng rng(21);
  for (std::size_t n = 1; n <= 7; ++n) {
    const HermMat a = random_pd(n, rng), b = random_pd(n, rng);
    const HermMat g = geometric_mean(a, b);
    EXPECT_LT(oracle::max_abs_diff(g.mat(), oracle::geomean(oracle::to_eigen(a.mat()), oracle::to_eigen(b.mat()))), 1e-12);
    // Riccati: G A^{-1} G = B.
    EXPECT_LT(frobenius(g.mat() * invm(a).mat() * g.mat() - b.mat()), 1e-11);
  }
}

TEST(GeometricMean, RankOneWithIdentity) {
  // W <= I and [[P, W], [W, I]] >= 0 forces W <= P; the maximum is P itself.
  const HermMat p = HermMat::diagonal({1.0, 0.0});
  const HermMat g = geometric_mean(p, HermMat::identity(2));
  EXPECT_LT(frobenius(g.mat() - p.mat()), 1e-12);
}

TEST(GeometricMean, SharedSubspaceCompressesToPdMean) {
  // Block-diagonal inputs supported on the same 2D subspace reduce to the 2x2 mean.
  Rng rng(22);
  const HermMat a2 = random_pd(2, rng), b2 = random_pd(2, rng);
  const HermMat a = compose(a2, HermMat::zeros(1), ComposeMode::dirsum);
  const HermMat b = compose(b2, HermMat::zeros(1), ComposeMode::dirsum);
  const HermMat g = geometric_mean(a, b);
  const HermMat g2 = geometric_mean_pd(a2, b2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_NEAR(std::abs(g(i, j) - (i < 2 && j < 2 ? g2(i, j) : cplx(0.0))), 0.0, 1e-12);
}

TEST(GeometricMean, TrivialIntersectionIsZero) {
  const std::vector<cplx> zero{1.0, 0.0};
  const std::vector<cplx> plus{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  const HermMat g = geometric_mean(HermMat::projector(zero), HermMat::projector(plus));
  EXPECT_EQ(frobenius(g.mat()), 0.0);
}

TEST(GeometricMean, RejectsNonPsd) {
  EXPECT_THROW(geometric_mean(HermMat::diagonal({1.0, -1.0}), HermMat::identity(2)), InvalidState);
  EXPECT_THROW(geometric_mean_pd(HermMat::diagonal({1.0, 0.0}), HermMat::identity(2)), SingularInput);
}

TEST(GeometricMean, MaximalityWitness) {
  Rng rng(23);
  const HermMat a = random_pd(3, rng), b = random_pd(3, rng);
  const HermMat g = geometric_mean(a, b);
  EXPECT_TRUE(maximality_witness(a, b, 0.999 * g));
  EXPECT_FALSE(maximality_witness(a, b, 1.001 * g));
}

TEST(EpsPath, AgreesOnPdInputs) {
  Rng rng(24);
  const HermMat a = random_pd(4, rng), b = random_pd(4, rng);
  EXPECT_LT(frobenius(geometric_mean_eps_path(a, b).mat() - geometric_mean_pd(a, b).mat()), 1e-6);
}

TEST(EpsPath, ScheduleValidation) {
  EXPECT_NO_THROW(RegularizationSchedule::standard().validate());
  RegularizationSchedule bad{{1e-3, 1e-2}, 1e-7};
  EXPECT_THROW(bad.validate(), InvalidArgument);
  RegularizationSchedule tiny{{1e-3, 1e-13}, 1e-7};
  EXPECT_THROW(tiny.validate(), InvalidArgument);
  RegularizationSchedule empty{{}, 1e-7};
  EXPECT_THROW(empty.validate(), InvalidArgument);
}
