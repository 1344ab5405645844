#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "regret_frontier/error.hpp"
#include "regret_frontier/instances.hpp"
#include "regret_frontier/kl.hpp"
#include "regret_frontier/rng.hpp"

using namespace regret_frontier;

TEST(Kl, CategoricalBasics) {
  const std::vector<double> p{0.5, 0.5}, q{0.25, 0.75};
  EXPECT_NEAR(kl_categorical(p, q), 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0), 1e-15);
  EXPECT_EQ(kl_categorical(p, p), 0.0);
  EXPECT_TRUE(std::isinf(kl_categorical(p, std::vector<double>{1.0, 0.0})));
  try {
    kl_categorical(p, std::vector<double>{1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Kl, GaussianAndBernoulli) {
  EXPECT_DOUBLE_EQ(kl_gaussian_unit(0.0, 0.3), 0.045);
  EXPECT_NEAR(kl_bernoulli(0.5, 0.25), 0.5 * std::log(2.0) + 0.5 * std::log(0.5 / 0.75), 1e-15);
  EXPECT_TRUE(std::isinf(kl_bernoulli(0.5, 1.0)));
  EXPECT_THROW(kl_bernoulli(1.2, 0.5), Error);
}

TEST(Kinf, ZeroWhenConstraintAlreadyHolds) {
  const std::vector<double> p{0.3, 0.7}, v{0.0, 1.0};
  const auto r = kinf_transition(p, v, 0.5);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(*r.argmin_transition, p);
}

TEST(Kinf, InfiniteWhenTargetUnreachable) {
  const std::vector<double> p{0.3, 0.7}, v{0.0, 1.0};
  const auto r = kinf_transition(p, v, 1.0);
  EXPECT_TRUE(std::isinf(r.value));
  EXPECT_FALSE(r.argmin_transition.has_value());
}

TEST(Kinf, MovesMassOutsideSupportWhenNeeded) {
  // The high-value state has p = 0; reaching c needs mass there.
  const std::vector<double> p{0.5, 0.5, 0.0}, v{0.0, 0.2, 1.0};
  const auto r = kinf_transition(p, v, 0.6);
  ASSERT_TRUE(r.argmin_transition);
  const auto& q = *r.argmin_transition;
  EXPECT_GT(q[2], 0.0);
  EXPECT_NEAR(q[0] * v[0] + q[1] * v[1] + q[2] * v[2], 0.6, 1e-8);
  EXPECT_NEAR(r.value, kl_categorical(p, q), 1e-12);
  EXPECT_NEAR(r.value, oracle::kinf_dual_grid(p, v, 0.6, 2000), 1e-8);
}

TEST(Kinf, MatchesTwoPointGrid) {
  SplitMix64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const double p1 = 0.05 + 0.9 * rng.uniform();
    const double v0 = rng.uniform(), v1 = v0 + 0.1 + rng.uniform();
    const double mean = (1 - p1) * v0 + p1 * v1;
    const double c = mean + (0.02 + 0.9 * rng.uniform()) * (v1 - mean);
    const std::vector<double> p{1 - p1, p1}, v{v0, v1};
    EXPECT_NEAR(kinf_transition(p, v, c).value, oracle::kinf_two_point_grid(p1, v0, v1, c, 1e-5),
                1e-3);
  }
}

TEST(Kinf, MatchesDualGridOnLargerSupports) {
  SplitMix64 rng(12);
  for (int t = 0; t < 30; ++t) {
    const int S = 3 + t % 4;
    std::vector<double> p(S), v(S);
    double total = 0.0;
    for (int i = 0; i < S; ++i) {
      p[i] = rng.exponential();
      total += p[i];
      v[i] = rng.uniform();
    }
    for (double& x : p) x /= total;
    double mean = 0.0, vmax = 0.0;
    for (int i = 0; i < S; ++i) {
      mean += p[i] * v[i];
      vmax = std::max(vmax, v[i]);
    }
    const double c = mean + (0.05 + 0.9 * rng.uniform()) * (vmax - mean);
    EXPECT_NEAR(kinf_transition(p, v, c).value, oracle::kinf_dual_grid(p, v, c, 2000), 1e-7);
  }
}

TEST(LocalComplexity, RewardOnlyBanditIsHalfSquaredGap) {
  Mdp m(1, 2, 1, {1.0, 1.0}, RewardFamily::kGaussianUnitVariance, {0.4, 0.0}, {1.0});
  const auto sol = backward_induction(m);
  EXPECT_DOUBLE_EQ(local_complexity(m, sol, 0, 1, 0).value, 0.08);
  try {
    local_complexity(m, sol, 0, 0, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOptimalActionQueried);
  }
}

TEST(LocalComplexity, MatchesNestedGridOracle) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto inst = full_support_mdp(seed, 3, 2, 2);
    const auto sol = backward_induction(inst.mdp);
    for (int h = 0; h < 2; ++h) {
      for (int s = 0; s < 3; ++s) {
        for (int a = 0; a < 2; ++a) {
          if (sol.is_optimal(h, s, a)) continue;
          const double k = local_complexity(inst.mdp, sol, s, a, h).value;
          EXPECT_NEAR(k, oracle::local_complexity_grid(inst.mdp, h, s, a, 100), 1e-4);
        }
      }
    }
  }
}

TEST(LocalComplexity, NeverExceedsEitherPureStrategy) {
  const auto inst = full_support_mdp(9, 3, 2, 3, RewardFamily::kGaussianUnitVariance);
  const Mdp& m = inst.mdp;
  const auto sol = backward_induction(m);
  for (int h = 0; h < 3; ++h) {
    for (int s = 0; s < 3; ++s) {
      for (int a = 0; a < 2; ++a) {
        if (sol.is_optimal(h, s, a)) continue;
        const double joint = local_complexity(m, sol, s, a, h).value;
        const double reward = local_complexity(m, sol, s, a, h, LocalComplexityMode::kRewardOnly).value;
        EXPECT_LE(joint, reward + 1e-12);
      }
    }
  }
}

TEST(LocalComplexity, PinskerLowerBound) {
  // With rewards in [0, 1), V*_{h+1} spans at most R = H - h - 1, so a change
  // closing the gap needs |reward shift| + R |p - p'|_1 >= gap, hence
  // K >= gap^2 / (2 (1 + R^2)) >= gap^2 / (2 (H - h)^2).
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int H = 1 + static_cast<int>(seed % 3);
    const Mdp m = random_mdp(seed, 2 + seed % 2, 2, H);
    const auto sol = backward_induction(m);
    for (int h = 0; h < H; ++h) {
      for (int s = 0; s < m.num_states(); ++s) {
        for (int a = 0; a < 2; ++a) {
          if (sol.is_optimal(h, s, a)) continue;
          const double gap = sol.gap(h, s, a);
          const double r = H - h - 1;
          const double k = local_complexity(m, sol, s, a, h).value;
          EXPECT_GE(k, gap * gap / (2.0 * (1.0 + r * r)) - 1e-12);
          EXPECT_GE(k, gap * gap / (2.0 * (H - h) * (H - h)) - 1e-12);
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 50);
}
