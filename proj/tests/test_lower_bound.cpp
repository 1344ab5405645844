#include <gtest/gtest.h>

#include <cmath>

#include "regret_frontier/error.hpp"
#include "regret_frontier/instances.hpp"
#include "regret_frontier/lower_bound.hpp"

using namespace regret_frontier;

namespace {

Mdp bandit(double gap) {
  return Mdp(1, 2, 1, {1.0, 1.0}, RewardFamily::kGaussianUnitVariance, {gap, 0.0}, {1.0});
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

}  // namespace

TEST(FullSupportBound, BanditReduction) {
  for (double alpha : {0.0, 0.25, 0.5}) {
    const auto r = full_support_bound(bandit(0.2), alpha);
    EXPECT_NEAR(r.value, 2.0 * (1.0 - alpha) / 0.2, 1e-12);
    ASSERT_TRUE(r.allocation);
    EXPECT_TRUE(r.allocation->unbounded[0]);
    EXPECT_NEAR(r.allocation->eta[1], (1.0 - alpha) / 0.02, 1e-9);
  }
}

TEST(FullSupportBound, LinearInOneMinusAlpha) {
  const auto inst = full_support_mdp(3, 3, 2, 2);
  const double v0 = full_support_bound(inst.mdp, 0.0).value;
  EXPECT_NEAR(full_support_bound(inst.mdp, 0.4).value, 0.6 * v0, 1e-12 * v0);
}

TEST(FullSupportBound, AllocationValueMatchesObjective) {
  const auto inst = full_support_mdp(4, 3, 2, 2);
  const auto r = full_support_bound(inst.mdp, 0.0);
  EXPECT_NEAR(r.allocation->value, r.value, 1e-9);
  for (double x : r.allocation->eta) EXPECT_GE(x, 0.0);
}

TEST(FullSupportBound, PreconditionErrors) {
  EXPECT_EQ(code_of([] { full_support_bound(tree_mdp(TreeSpec{}), 0.0); }),
            ErrorCode::kNotFullSupport);
  EXPECT_EQ(code_of([] { full_support_bound(bandit(0.0), 0.0); }), ErrorCode::kDegenerateGaps);
  EXPECT_EQ(code_of([] { full_support_bound(bandit(0.1), 1.0); }), ErrorCode::kInvalidInput);
  // Two optimal arms leading to different states break the shared occupancy.
  const Mdp split(2, 2, 2, {1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 1, 0, 1, 0},
                  RewardFamily::kGaussianUnitVariance, {0, 0, 0, 0, 1, 0.5, 1, 0.5}, {1.0, 0.0});
  EXPECT_EQ(code_of([&] { full_support_bound(split, 0.0); }), ErrorCode::kAssumptionViolated);
}

TEST(PinskerBound, ZeroForSingleStage) {
  EXPECT_EQ(pinsker_upper_bound(bandit(0.3)).value, 0.0);
  EXPECT_NEAR(pinsker_upper_bound(bandit(0.3), PinskerFactor::kRemainingStages).value, 2.0 / 0.3,
              1e-12);
}

TEST(PinskerBound, TreeValue) {
  // Gaps 0.1 at stages 1 and 2 (factors 2^2, 1^2) and at the leaf (factor 0).
  EXPECT_NEAR(pinsker_upper_bound(tree_mdp(TreeSpec{})).value, 2.0 * (4.0 + 1.0) / 0.1, 1e-9);
}

TEST(PinskerBound, RemainingStageVariantDominatesFullSupport) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = full_support_mdp(seed, 3, 2, 2);
    EXPECT_LE(full_support_bound(inst.mdp, 0.0).value,
              pinsker_upper_bound(inst.mdp, PinskerFactor::kRemainingStages).value);
  }
}

TEST(NoDynamicsBound, TreeKnownDynamics) {
  const Mdp m = tree_mdp(TreeSpec{});
  EXPECT_EQ(no_dynamics_bound(m, 0.0, NoDynamicsMode::kKnownDynamics).value, 60.0);
  EXPECT_EQ(no_dynamics_bound(m, 0.5, NoDynamicsMode::kKnownDynamics).value, 30.0);
}

TEST(NoDynamicsBound, GeneralModeEqualsFullSupportOnCertifiedInstances) {
  const auto inst = full_support_mdp(6, 3, 2, 2);
  EXPECT_DOUBLE_EQ(no_dynamics_bound(inst.mdp, 0.2).value, full_support_bound(inst.mdp, 0.2).value);
}

TEST(NoDynamicsBound, HalvingLastStageGapsDoublesTheirTerms) {
  const Mdp base = bandit(0.4);
  const Mdp halved = base.with_reward_means({0.2, 0.0});
  const auto a = no_dynamics_bound(base, 0.0, NoDynamicsMode::kKnownDynamics);
  const auto b = no_dynamics_bound(halved, 0.0, NoDynamicsMode::kKnownDynamics);
  EXPECT_GE(b.per_triplet[0].contribution, 2.0 * a.per_triplet[0].contribution - 1e-12);
}

TEST(DynamicsResidual, OccupancyOfAPolicyIsFeasible) {
  const Mdp m = random_mdp(2, 3, 2, 3);
  const auto occ = occupancy(m, DeterministicPolicy(3, 3, 1));
  AllocationEta alloc;
  alloc.num_states = 3;
  alloc.num_actions = 2;
  alloc.horizon = 3;
  alloc.eta = occ.rho;
  for (double& x : alloc.eta) x *= 7.0;
  alloc.unbounded.assign(alloc.eta.size(), 0);
  EXPECT_LE(dynamics_residual(m, alloc), 1e-12);
  alloc.eta[m.sa_index(2, 0, 0)] += 0.5;
  EXPECT_NEAR(dynamics_residual(m, alloc), 0.5, 1e-12);
}

TEST(TheoremLowerBound, RefusesOutsideSupportedRegimes) {
  EXPECT_EQ(code_of([] { theorem_lower_bound(tree_mdp(TreeSpec{}), 0.0); }), ErrorCode::kUnsupported);
  EXPECT_NO_THROW(theorem_lower_bound(full_support_mdp(1, 2, 2, 2).mdp, 0.0));
}
