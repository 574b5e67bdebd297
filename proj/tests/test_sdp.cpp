#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qfid/ensembles.hpp"
#include "qfid/errors.hpp"
#include "qfid/sdp.hpp"

using namespace qfid;

TEST(Sdp, MatchesClosedFormsOnRandomPd) {
  Rng rng(41);
  for (std::size_t n = 2; n <= 6; ++n) {
    const DensityMatrix r = random_density(n, n, rng), s = random_density(n, n, rng);
    const auto er = oracle::to_eigen(r.mat()), es = oracle::to_eigen(s.mat());
    const SdpSolution m = solve({SdpKind::matsumoto, r, s});
    const SdpSolution u = solve({SdpKind::uhlmann, r, s});
    EXPECT_NEAR(m.primal_value, oracle::matsumoto(er, es), 1e-7);
    EXPECT_NEAR(u.primal_value, oracle::uhlmann(er, es), 1e-7);
    EXPECT_LE(m.gap, 1e-8);
    EXPECT_LE(u.gap, 1e-8);
    EXPECT_TRUE(verify_solution({SdpKind::matsumoto, r, s}, m).ok());
    EXPECT_TRUE(verify_solution({SdpKind::uhlmann, r, s}, u).ok());
    EXPECT_GE(u.primal_value, m.primal_value - 1e-8);
  }
}

TEST(Sdp, DualStartIsFeasible) {
  Rng rng(42);
  const DensityMatrix r = random_density(3, 3, rng), s = random_density(3, 3, rng);
  const HermMat two = 2.0 * HermMat::identity(3);
  for (SdpKind k : {SdpKind::matsumoto, SdpKind::uhlmann}) {
    const VerificationReport v = verify_dual({k, r, s}, two, two, CMatrix(3, 3));
    EXPECT_TRUE(v.dual_feasible);
    // Dual objective (tr(rho Y) + tr(sigma Z)) / 2 with Y = Z = 2I is 2.
    EXPECT_NEAR(v.dual_value, 2.0, 1e-12);
  }
}

TEST(Sdp, DualRejectsNonAntiHermitianA) {
  const DensityMatrix r(HermMat::diagonal({0.5, 0.5}));
  const HermMat two = 2.0 * HermMat::identity(2);
  const VerificationReport v = verify_dual({SdpKind::matsumoto, r, r}, two, two, CMatrix::identity(2));
  EXPECT_FALSE(v.dual_feasible);
}

TEST(Sdp, CommutingInputs) {
  const DensityMatrix r(HermMat::diagonal({0.5, 0.5})), s(HermMat::diagonal({0.25, 0.75}));
  const double c = std::sqrt(0.125) + std::sqrt(0.375);
  EXPECT_NEAR(solve({SdpKind::matsumoto, r, s}).primal_value, c, 1e-8);
  EXPECT_NEAR(solve({SdpKind::uhlmann, r, s}).primal_value, c, 1e-8);
}

TEST(Sdp, SingularInputsAreRegularized) {
  const DensityMatrix r = DensityMatrix::pure(std::vector<cplx>{1.0, 0.0});
  const DensityMatrix s = DensityMatrix::pure(std::vector<cplx>{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
  SdpOptions opts;
  opts.regularize = 1e-6;
  const SdpSolution u = solve({SdpKind::uhlmann, r, s}, opts);
  EXPECT_EQ(u.regularization, 1e-6);
  EXPECT_NEAR(u.primal_value, 1.0 / std::sqrt(2.0), 1e-4);
  opts.regularize = 0.0;
  EXPECT_THROW(solve({SdpKind::uhlmann, r, s}, opts), InvalidState);
}

TEST(Sdp, OptionValidationAndLog) {
  const DensityMatrix r(HermMat::diagonal({0.5, 0.5}));
  SdpOptions bad;
  bad.gap_tol = 0.0;
  EXPECT_THROW(solve({SdpKind::matsumoto, r, r}, bad), InvalidArgument);
  SdpOptions capped;
  capped.max_iter = 1;
  EXPECT_THROW(solve({SdpKind::matsumoto, r, r}, capped), ConvergenceError);
  const SdpSolution sol = solve({SdpKind::matsumoto, r, r});
  ASSERT_FALSE(sol.trace_log.empty());
  EXPECT_EQ(sol.trace_log.front().gap, 2.0);
  EXPECT_LE(sol.trace_log.back().gap, 1e-8);
  EXPECT_STREQ(to_string(SdpKind::uhlmann), "uhlmann");
}
