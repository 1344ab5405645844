#pragma once

#include <optional>
#include <vector>

#include "regret_frontier/mdp.hpp"

namespace regret_frontier {

struct OptimalPolicySets {
  std::vector<DeterministicPolicy> return_optimal;   // Pi*
  std::vector<DeterministicPolicy> bellman_optimal;  // Pi_O*
};

/// Brute force over every deterministic policy.
OptimalPolicySets optimal_policy_sets(const Mdp& m, const OptimalSolution& sol,
                                      std::uint64_t max_count = kDefaultPolicyCap);

struct UniqueRhoCheck {
  bool holds = false;
  std::optional<OccupancyTensor> rho_star;
};

/// True iff all return-optimal policies induce the same state occupancy
/// (within 1e-9). The common occupancy is returned when it holds.
UniqueRhoCheck check_unique_optimal_rho(const Mdp& m, const OptimalSolution& sol,
                                        std::uint64_t max_count = kDefaultPolicyCap);

/// For every return-optimal policy: visited states (rho > 0) must see an
/// optimal action and a value equal to V* there.
bool check_opt_act_vs_rho(const Mdp& m, const OptimalSolution& sol,
                          std::uint64_t max_count = kDefaultPolicyCap);

/// Greedy Bellman-optimal policy, lowest optimal action index at each (h, s).
DeterministicPolicy greedy_optimal_policy(const OptimalSolution& sol);

/// States reachable at each stage when only optimal actions are played,
/// i.e. the union of the state supports of all return-optimal policies.
/// Returned as an H x S 0/1 mask.
std::vector<std::uint8_t> optimal_support(const Mdp& m, const OptimalSolution& sol);

}  // namespace regret_frontier
