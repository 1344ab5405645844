#pragma once

#include <cstdint>
#include <vector>

#include "regret_frontier/mdp.hpp"

namespace regret_frontier {

/// Binary-tree instance: depth H, m actions at the leaves, reward eps on the
/// first action of the leftmost leaf and (when kappa > 0) reward kappa on the
/// first action of the rightmost leaf. Unit-variance Gaussian rewards.
struct TreeSpec {
  int depth = 3;
  int leaf_actions = 2;
  double eps = 0.1;
  double kappa = 0.0;

  int num_states() const { return (1 << depth) - 1; }
  int num_actions() const { return leaf_actions > 2 ? leaf_actions : 2; }
  std::uint64_t num_paths() const {
    return (std::uint64_t{1} << (depth - 1)) * static_cast<std::uint64_t>(leaf_actions);
  }

  bool operator==(const TreeSpec&) const = default;
};

/// Throws kInvalidSpec unless depth >= 2, m >= 2, eps > 0 and
/// (kappa == 0 or kappa >= 2 eps).
void validate_tree_spec(const TreeSpec& spec);

/// States are numbered breadth-first: root 0, children of s are 2s+1 (L) and
/// 2s+2 (R); stage h visits level h. At stage h only the nodes of level h
/// expose their actions (L, R inside the tree, a_1..a_m at the leaves); every
/// other (h, s) keeps a single self-loop action 0. Action indices >= 2 at
/// inner nodes alias R and are masked out.
Mdp tree_mdp(const TreeSpec& spec);

/// One policy per root-to-leaf path and leaf action, ordered by path bits
/// (L < R, root first) then leaf action. Off-path entries take action 0.
std::vector<DeterministicPolicy> reduce_to_paths(const TreeSpec& spec);

/// Recovers the tree shape from an MDP built by tree_mdp (eps and kappa are
/// read back from the rewards) and returns its path representatives.
/// Throws kInvalidSpec when the MDP is not a tree instance.
std::vector<DeterministicPolicy> reduce_to_paths(const Mdp& m);
TreeSpec infer_tree_spec(const Mdp& m);

/// Random MDP drawn from SplitMix64(seed), in this order: for every (h, s, a)
/// a transition row of S normalized Exp(1) draws (flat Dirichlet); then every
/// reward mean uniform in [0, 1) in (h, s, a) order; then the initial
/// distribution as another flat Dirichlet draw.
Mdp random_mdp(std::uint64_t seed, int num_states, int num_actions, int horizon,
               RewardFamily family = RewardFamily::kGaussianUnitVariance);

struct FullSupportInstance {
  Mdp mdp;
  OccupancyTensor rho_star;
  int attempts = 0;
};

/// random_mdp with every transition row mixed 0.9 p + 0.1 uniform. Reward
/// means are redrawn from the same stream until the return-optimal policies
/// share one state occupancy and that occupancy is positive everywhere.
/// Throws kGenerationFailed after 1000 attempts.
FullSupportInstance full_support_mdp(std::uint64_t seed, int num_states, int num_actions,
                                     int horizon,
                                     RewardFamily family = RewardFamily::kBernoulli);

}  // namespace regret_frontier
