#include <gtest/gtest.h>

#include "regret_frontier/error.hpp"
#include "regret_frontier/instances.hpp"
#include "regret_frontier/optimality.hpp"

using namespace regret_frontier;

TEST(TreeMdp, ShapeAndRewards) {
  const Mdp m = tree_mdp(TreeSpec{});
  EXPECT_EQ(m.num_states(), 7);
  EXPECT_EQ(m.num_actions(), 2);
  EXPECT_EQ(m.horizon(), 3);
  EXPECT_DOUBLE_EQ(m.reward_mean(2, 3, 0), 0.1);
  const auto sol = backward_induction(m);
  EXPECT_DOUBLE_EQ(sol.v0star, 0.1);
  EXPECT_DOUBLE_EQ(sol.delta_min, 0.1);
  EXPECT_DOUBLE_EQ(sol.delta_max, 0.1);
}

TEST(TreeMdp, StageOnlyExposesItsLevel) {
  const Mdp m = tree_mdp(TreeSpec{4, 3, 0.1, 0.0});
  EXPECT_EQ(m.num_actions(), 3);
  EXPECT_EQ(m.num_available(0, 0), 2);
  EXPECT_EQ(m.num_available(1, 0), 1);
  EXPECT_EQ(m.num_available(3, 7), 3);
  EXPECT_EQ(m.num_available(2, 7), 1);
}

TEST(TreeMdp, InvalidSpecs) {
  for (const TreeSpec& bad : {TreeSpec{1, 2, 0.1, 0.0}, TreeSpec{3, 1, 0.1, 0.0},
                              TreeSpec{3, 2, 0.0, 0.0}, TreeSpec{3, 2, 0.1, 0.05}}) {
    try {
      tree_mdp(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidSpec);
    }
  }
}

TEST(ReduceToPaths, EightPathsSevenSuboptimalWithGapEps) {
  const TreeSpec spec;
  const Mdp m = tree_mdp(spec);
  const auto sol = backward_induction(m);
  const auto paths = reduce_to_paths(m);
  ASSERT_EQ(paths.size(), 8U);
  int optimal = 0;
  for (const auto& pi : paths) {
    const double g = policy_gap(m, sol, pi);
    if (g == 0.0) ++optimal;
    else EXPECT_DOUBLE_EQ(g, 0.1);
  }
  EXPECT_EQ(optimal, 1);
  EXPECT_EQ(paths.front().table(), (std::vector<int>(21, 0)));
}

TEST(ReduceToPaths, InfersSpecAndRejectsOtherMdps) {
  const TreeSpec spec{3, 2, 0.05, 0.2};
  EXPECT_EQ(infer_tree_spec(tree_mdp(spec)), spec);
  EXPECT_THROW(reduce_to_paths(random_mdp(0, 7, 2, 3)), Error);
}

TEST(RandomMdp, ReproducibleAndSeedSensitive) {
  EXPECT_EQ(random_mdp(42, 2, 2, 2), random_mdp(42, 2, 2, 2));
  EXPECT_FALSE(random_mdp(42, 2, 2, 2) == random_mdp(43, 2, 2, 2));
}

TEST(FullSupportMdp, CertifiedInstances) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = full_support_mdp(seed, 3, 2, 2);
    EXPECT_EQ(inst.mdp.reward_family(), RewardFamily::kBernoulli);
    for (double x : inst.rho_star.rho_state) EXPECT_GT(x, 0.0);
    for (double x : inst.mdp.transitions()) EXPECT_GE(x, 0.1 / 3 - 1e-15);
    const auto sol = backward_induction(inst.mdp);
    EXPECT_TRUE(check_unique_optimal_rho(inst.mdp, sol).holds);
  }
}
