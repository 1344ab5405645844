#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "regret_frontier/error.hpp"
#include "regret_frontier/instances.hpp"
#include "regret_frontier/mdp.hpp"
#include "regret_frontier/optimality.hpp"

using namespace regret_frontier;

namespace {

DeterministicPolicy from_table(const Mdp& m, const oracle::Table& t) {
  DeterministicPolicy pi(m.horizon(), m.num_states(), 0);
  pi.table() = t;
  return pi;
}

Mdp two_arm_bandit(double gap) {
  return Mdp(1, 2, 1, {1.0, 1.0}, RewardFamily::kGaussianUnitVariance, {gap, 0.0}, {1.0});
}

}  // namespace

TEST(Mdp, RejectsRowsThatDoNotSumToOne) {
  EXPECT_THROW(Mdp(1, 1, 1, {0.9}, RewardFamily::kGaussianUnitVariance, {0.0}, {1.0}), Error);
  try {
    Mdp(2, 1, 1, {0.5, 0.5}, RewardFamily::kGaussianUnitVariance, {0.0}, {1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Mdp, RejectsBernoulliMeansOutsideUnitInterval) {
  try {
    Mdp(1, 1, 1, {1.0}, RewardFamily::kBernoulli, {1.5}, {1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidMdp);
  }
}

TEST(Mdp, AllTrueMaskIsNormalizedAway) {
  Mdp m(1, 2, 1, {1.0, 1.0}, RewardFamily::kGaussianUnitVariance, {0.0, 0.0}, {1.0}, {1, 1});
  EXPECT_TRUE(m.all_available());
}

TEST(BackwardInduction, MatchesBestEnumeratedPolicy) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Mdp m = random_mdp(seed, 3, 2, 2);
    const auto sol = backward_induction(m);
    double best = -1e300;
    for (const auto& t : oracle::all_tables(m)) best = std::max(best, oracle::rollout(m, t).value);
    EXPECT_NEAR(sol.v0star, best, 1e-12) << "seed " << seed;
    const auto q = oracle::optimal_q(m);
    for (std::size_t i = 0; i < sol.qstar.size(); ++i) EXPECT_NEAR(sol.qstar[i], q.q[i], 1e-12);
  }
}

TEST(BackwardInduction, GapsTiesAndDegenerateFlag) {
  const auto sol = backward_induction(two_arm_bandit(0.3));
  EXPECT_DOUBLE_EQ(sol.gap(0, 0, 1), 0.3);
  EXPECT_DOUBLE_EQ(sol.delta_min, 0.3);
  EXPECT_DOUBLE_EQ(sol.delta_max, 0.3);
  EXPECT_EQ(sol.optimal_actions(0, 0), std::vector<int>{0});
  EXPECT_EQ(sol.zmul, 0);

  const auto tie = backward_induction(two_arm_bandit(0.0));
  EXPECT_TRUE(tie.degenerate);
  EXPECT_TRUE(std::isinf(tie.delta_min));
  EXPECT_EQ(tie.zmul, 2);
  EXPECT_EQ(tie.optimal_actions(0, 0), (std::vector<int>{0, 1}));
}

TEST(PolicyGap, EqualsOccupancyWeightedActionGaps) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Mdp m = random_mdp(seed, 2, 3, 3);
    const auto sol = backward_induction(m);
    for (const auto& t : oracle::all_tables(m)) {
      const auto pi = from_table(m, t);
      const auto r = oracle::rollout(m, t);
      double weighted = 0.0;
      for (std::size_t i = 0; i < r.sa.size(); ++i) weighted += r.sa[i] * sol.gaps[i];
      const double gap = policy_gap(m, sol, pi);
      EXPECT_NEAR(gap, sol.v0star - r.value, 1e-12);
      EXPECT_NEAR(gap, weighted, 1e-9);
    }
  }
}

TEST(Occupancy, MatchesReferenceRollout) {
  const Mdp m = random_mdp(5, 3, 2, 3);
  for (const auto& t : oracle::all_tables(m)) {
    const auto occ = occupancy(m, from_table(m, t));
    const auto r = oracle::rollout(m, t);
    for (std::size_t i = 0; i < r.sa.size(); ++i) EXPECT_NEAR(occ.rho[i], r.sa[i], 1e-14);
    for (std::size_t i = 0; i < r.state.size(); ++i) EXPECT_NEAR(occ.rho_state[i], r.state[i], 1e-14);
  }
}

TEST(PolicyEnumerator, CountsAndOrder) {
  const Mdp m = random_mdp(1, 2, 2, 2);
  const auto all = enumerate_policies(m);
  ASSERT_EQ(all.size(), 16U);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(count_policies(m), 16U);
  EXPECT_THROW(PolicyEnumerator(m, 15), Error);
}

TEST(PolicyEnumerator, RespectsAvailabilityMask) {
  const Mdp tree = tree_mdp(TreeSpec{});
  EXPECT_EQ(count_policies(tree), 128U);
  for (const auto& pi : enumerate_policies(tree)) EXPECT_NO_THROW(validate_policy(tree, pi));
}

TEST(OptimalityStructure, BellmanOptimalIsReturnOptimalOnTiedInstances) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Mdp m = oracle::quantized_mdp(seed, 2, 2, 2);
    const auto sol = backward_induction(m);
    const auto sets = optimal_policy_sets(m, sol);
    for (const auto& pi : sets.bellman_optimal) {
      EXPECT_TRUE(std::binary_search(sets.return_optimal.begin(), sets.return_optimal.end(), pi));
    }
    EXPECT_TRUE(check_opt_act_vs_rho(m, sol));
  }
}

TEST(OptimalityStructure, ReturnOptimalCanActArbitrarilyOffSupport) {
  // State 1 is never reached, so any action there keeps the return optimal.
  Mdp m(2, 2, 2, {1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1},
        RewardFamily::kGaussianUnitVariance, {1, 0, 0, 0.3, 1, 0, 1, 0.5}, {1.0, 0.0});
  const auto sol = backward_induction(m);
  const auto sets = optimal_policy_sets(m, sol);
  EXPECT_EQ(sets.bellman_optimal.size(), 1U);
  EXPECT_EQ(sets.return_optimal.size(), 4U);
}

TEST(GreedyOptimalPolicy, PicksLowestOptimalIndex) {
  const auto sol = backward_induction(two_arm_bandit(0.0));
  EXPECT_EQ(greedy_optimal_policy(sol)(0, 0), 0);
}
