#include "regret_frontier/instances.hpp"

#include <cmath>

#include "regret_frontier/error.hpp"
#include "regret_frontier/optimality.hpp"
#include "regret_frontier/rng.hpp"

namespace regret_frontier {
namespace {

constexpr int kMaxTreeDepth = 16;
constexpr int kMaxGenerationAttempts = 1000;
constexpr double kUniformMixWeight = 0.1;

int level_of(int state) {
  int level = 0;
  while ((2 << level) - 1 <= state) ++level;
  return level;  // 0-based level, root = 0
}

void fill_dirichlet(SplitMix64& rng, std::span<double> out) {
  double total = 0.0;
  for (double& x : out) {
    x = rng.exponential();
    total += x;
  }
  if (total <= 0.0) {
    for (double& x : out) x = 1.0 / static_cast<double>(out.size());
    return;
  }
  for (double& x : out) x /= total;
}

}  // namespace

void validate_tree_spec(const TreeSpec& spec) {
  if (spec.depth < 2 || spec.depth > kMaxTreeDepth) {
    throw Error(ErrorCode::kInvalidSpec, "tree depth must be in [2, 16]");
  }
  if (spec.leaf_actions < 2) {
    throw Error(ErrorCode::kInvalidSpec, "leaf action count m must be at least 2");
  }
  if (!(spec.eps > 0.0) || !std::isfinite(spec.eps)) {
    throw Error(ErrorCode::kInvalidSpec, "eps must be positive");
  }
  if (!std::isfinite(spec.kappa) || spec.kappa < 0.0 ||
      (spec.kappa != 0.0 && spec.kappa < 2.0 * spec.eps)) {
    throw Error(ErrorCode::kInvalidSpec, "kappa must be 0 or at least 2 eps");
  }
}

Mdp tree_mdp(const TreeSpec& spec) {
  validate_tree_spec(spec);
  const int H = spec.depth, S = spec.num_states(), A = spec.num_actions();
  std::vector<double> transitions(static_cast<std::size_t>(H) * S * A * S, 0.0);
  std::vector<double> rewards(static_cast<std::size_t>(H) * S * A, 0.0);
  std::vector<std::uint8_t> available(static_cast<std::size_t>(H) * S * A, 0);
  const auto sa = [&](int h, int s, int a) {
    return (static_cast<std::size_t>(h) * S + s) * A + a;
  };

  for (int h = 0; h < H; ++h) {
    for (int s = 0; s < S; ++s) {
      const int level = level_of(s);
      const bool leaf = level == H - 1;
      for (int a = 0; a < A; ++a) {
        int target = s;
        if (!leaf) target = a == 0 ? 2 * s + 1 : 2 * s + 2;
        transitions[sa(h, s, a) * S + target] = 1.0;
        bool open = a == 0;
        if (level == h) open = leaf ? a < spec.leaf_actions : a < 2;
        available[sa(h, s, a)] = open ? 1 : 0;
      }
    }
  }
  const int leftmost_leaf = (1 << (H - 1)) - 1;
  const int rightmost_leaf = S - 1;
  rewards[sa(H - 1, leftmost_leaf, 0)] = spec.eps;
  if (spec.kappa > 0.0) rewards[sa(H - 1, rightmost_leaf, 0)] = spec.kappa;

  std::vector<double> initial(S, 0.0);
  initial[0] = 1.0;
  return Mdp(S, A, H, std::move(transitions), RewardFamily::kGaussianUnitVariance,
             std::move(rewards), std::move(initial), std::move(available));
}

std::vector<DeterministicPolicy> reduce_to_paths(const TreeSpec& spec) {
  validate_tree_spec(spec);
  const int H = spec.depth, S = spec.num_states();
  std::vector<DeterministicPolicy> out;
  out.reserve(spec.num_paths());
  const std::uint64_t num_bit_patterns = std::uint64_t{1} << (H - 1);
  for (std::uint64_t bits = 0; bits < num_bit_patterns; ++bits) {
    for (int leaf_action = 0; leaf_action < spec.leaf_actions; ++leaf_action) {
      DeterministicPolicy pi(H, S, 0);
      int node = 0;
      for (int h = 0; h + 1 < H; ++h) {
        // Root decision is the most significant bit.
        const int go_right = static_cast<int>((bits >> (H - 2 - h)) & 1U);
        pi.set(h, node, go_right);
        node = 2 * node + 1 + go_right;
      }
      pi.set(H - 1, node, leaf_action);
      out.push_back(std::move(pi));
    }
  }
  return out;
}

TreeSpec infer_tree_spec(const Mdp& m) {
  const int H = m.horizon();
  if (H < 2 || H > kMaxTreeDepth || m.num_states() != (1 << H) - 1 ||
      m.reward_family() != RewardFamily::kGaussianUnitVariance) {
    throw Error(ErrorCode::kInvalidSpec, "MDP does not have the shape of a tree instance");
  }
  TreeSpec spec;
  spec.depth = H;
  const int leftmost_leaf = (1 << (H - 1)) - 1;
  spec.leaf_actions = m.num_available(H - 1, leftmost_leaf);
  spec.eps = m.reward_mean(H - 1, leftmost_leaf, 0);
  spec.kappa = m.reward_mean(H - 1, m.num_states() - 1, 0);
  try {
    if (tree_mdp(spec) == m) return spec;
  } catch (const Error&) {
  }
  throw Error(ErrorCode::kInvalidSpec, "MDP is not a tree instance");
}

std::vector<DeterministicPolicy> reduce_to_paths(const Mdp& m) {
  return reduce_to_paths(infer_tree_spec(m));
}

Mdp random_mdp(std::uint64_t seed, int num_states, int num_actions, int horizon,
               RewardFamily family) {
  if (num_states < 1 || num_actions < 1 || horizon < 1) {
    throw Error(ErrorCode::kInvalidInput, "S, A and H must all be at least 1");
  }
  SplitMix64 rng(seed);
  const std::size_t n = static_cast<std::size_t>(horizon) * num_states * num_actions;
  std::vector<double> transitions(n * num_states);
  for (std::size_t i = 0; i < n; ++i) {
    fill_dirichlet(rng, std::span<double>(transitions.data() + i * num_states,
                                          static_cast<std::size_t>(num_states)));
  }
  std::vector<double> rewards(n);
  for (double& r : rewards) r = rng.uniform();
  std::vector<double> initial(num_states);
  fill_dirichlet(rng, initial);
  return Mdp(num_states, num_actions, horizon, std::move(transitions), family,
             std::move(rewards), std::move(initial));
}

FullSupportInstance full_support_mdp(std::uint64_t seed, int num_states, int num_actions,
                                     int horizon, RewardFamily family) {
  const Mdp base = random_mdp(seed, num_states, num_actions, horizon, family);
  std::vector<double> transitions = base.transitions();
  const double uniform = 1.0 / num_states;
  for (double& x : transitions) x = (1.0 - kUniformMixWeight) * x + kUniformMixWeight * uniform;
  std::vector<double> initial(base.initial().begin(), base.initial().end());

  // Rewards are redrawn from a stream derived from the seed, independent of
  // the one that produced the dynamics.
  SplitMix64 rng(seed ^ 0xD1B54A32D192ED03ULL);
  std::vector<double> rewards = base.reward_means();
  for (int attempt = 1; attempt <= kMaxGenerationAttempts; ++attempt) {
    if (attempt > 1) {
      for (double& r : rewards) r = rng.uniform();
    }
    Mdp candidate(num_states, num_actions, horizon, transitions, family, rewards, initial);
    const auto sol = backward_induction(candidate);
    auto check = check_unique_optimal_rho(candidate, sol);
    if (!check.holds) continue;
    bool positive = true;
    for (double x : check.rho_star->rho_state) positive = positive && x > 0.0;
    if (!positive) continue;
    return {std::move(candidate), std::move(*check.rho_star), attempt};
  }
  throw Error(ErrorCode::kGenerationFailed,
              "no full-support instance after 1000 attempts");
}

}  // namespace regret_frontier
