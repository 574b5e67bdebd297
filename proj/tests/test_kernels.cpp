#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <numbers>

#include "qfid/ensembles.hpp"
#include "qfid/errors.hpp"
#include "qfid/kernels.hpp"

using namespace qfid;

TEST(Sweep, PureEndpoints) {
  const SweepRow same = sweep_point(FixedState::pure, 0.0, 1.0);
  EXPECT_NEAR(same.uhlmann, 1.0, 1e-12);
  EXPECT_NEAR(same.holevo, 1.0, 1e-12);
  EXPECT_EQ(same.matsumoto, 1.0);
  const SweepRow orth = sweep_point(FixedState::pure, std::numbers::pi / 2, 1.0);
  EXPECT_NEAR(orth.uhlmann, 0.0, 1e-12);
  EXPECT_NEAR(orth.holevo, 0.0, 1e-12);
  EXPECT_EQ(orth.matsumoto, 0.0);
  // Distinct pure states: the exact path gives zero, not an eps artefact.
  EXPECT_EQ(sweep_point(FixedState::pure, 0.3, 1.0).matsumoto, 0.0);
}

TEST(Sweep, MixedTargetsKeepFidelitiesClose) {
  SweepConfig cfg = SweepConfig::uniform(FixedState::pure, 41, 51);
  double spread = 0.0;
  for (const SweepRow& r : sweep_grid(cfg, Exec::parallel)) {
    if (r.lambda > 0.5) continue;
    spread = std::max(spread, std::max({r.uhlmann, r.holevo, r.matsumoto}) - std::min({r.uhlmann, r.holevo, r.matsumoto}));
  }
  EXPECT_LE(spread, 0.1);
}

TEST(Sweep, StateConstruction) {
  const DensityMatrix s = sweep_state(0.0, 0.5);
  EXPECT_NEAR(s.herm()(0, 0).real(), 0.75, 1e-15);
  EXPECT_NEAR(s.herm()(1, 1).real(), 0.25, 1e-15);
  const DensityMatrix m = sweep_fixed_state(FixedState::mixed);
  EXPECT_NEAR(m.herm()(0, 0).real(), 0.75, 1e-15);
}

TEST(Sweep, ConfigValidation) {
  SweepConfig cfg = SweepConfig::uniform(FixedState::pure, 3, 3);
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.theta_grid.back(), std::numbers::pi / 2);
  cfg.lambda_grid.push_back(1.5);
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = SweepConfig::uniform(FixedState::pure, 3, 3);
  cfg.theta_grid.clear();
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(Parallel, SweepMatchesSerialBitwise) {
  const SweepConfig cfg = SweepConfig::uniform(FixedState::mixed, 31, 17);
  const auto a = sweep_grid(cfg, Exec::serial);
  const auto b = sweep_grid(cfg, Exec::parallel);
  ASSERT_EQ(a.size(), b.size());
  ASSERT_EQ(a.size(), 31u * 17u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].theta, b[i].theta);
    EXPECT_EQ(a[i].lambda, b[i].lambda);
    EXPECT_EQ(a[i].uhlmann, b[i].uhlmann);
    EXPECT_EQ(a[i].holevo, b[i].holevo);
    EXPECT_EQ(a[i].matsumoto, b[i].matsumoto);
  }
  // theta-major ordering
  EXPECT_EQ(a[0].theta, a[16].theta);
  EXPECT_NE(a[0].theta, a[17].theta);
}

TEST(Parallel, BatchMatchesSerialBitwise) {
  Rng rng(111);
  std::vector<StatePair> pairs;
  for (int i = 0; i < 24; ++i) pairs.emplace_back(random_density(3, 1 + i % 3, rng), random_density(3, 3, rng));
  const auto a = fidelity_batch(pairs, Exec::serial);
  const auto b = fidelity_batch(pairs, Exec::parallel);
  ASSERT_EQ(a.size(), pairs.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].uhlmann, b[i].uhlmann);
    EXPECT_EQ(a[i].holevo, b[i].holevo);
    EXPECT_EQ(a[i].matsumoto, b[i].matsumoto);
    EXPECT_EQ(a[i].trace_distance, b[i].trace_distance);
  }
}

TEST(Parallel, ForEachVisitsAllAndRethrows) {
  std::vector<std::atomic<int>> hits(100);
  for_each_index(100, Exec::parallel, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  for (Exec e : {Exec::serial, Exec::parallel})
    EXPECT_THROW(for_each_index(10, e, [](std::size_t i) { if (i == 7) throw InvalidState("boom"); }), InvalidState);
}
