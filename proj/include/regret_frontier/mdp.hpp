#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace regret_frontier {

// Stages are 0-based in every API: stage h here is stage h+1 of the usual
// 1..H convention, and V*_{H} (0-based) is the zero boundary.

/// Absolute tolerance for membership in the optimal action sets O_h(s) and in
/// the set of return-optimal policies.
inline constexpr double kTieTolerance = 1e-9;

/// Default cap on brute-force policy enumeration.
inline constexpr std::uint64_t kDefaultPolicyCap = 1'000'000;

enum class RewardFamily { kGaussianUnitVariance, kBernoulli };

struct RewardSpec {
  RewardFamily family;
  double mean;
};

/// Time-inhomogeneous finite-horizon tabular MDP.
///
/// Transitions are stored as a dense H x S x A x S tensor, reward means as
/// H x S x A, both row-major. An optional availability mask (H x S x A)
/// restricts which actions a policy may take at (h, s); masked actions still
/// carry valid transition rows and rewards but are excluded from maximization,
/// gaps, policies and enumeration. Every (h, s) must keep at least one action.
class Mdp {
 public:
  Mdp(int num_states, int num_actions, int horizon,
      std::vector<double> transitions, RewardFamily family,
      std::vector<double> reward_means, std::vector<double> initial,
      std::vector<std::uint8_t> available = {});

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  int horizon() const { return horizon_; }
  RewardFamily reward_family() const { return family_; }

  std::size_t sa_index(int h, int s, int a) const {
    return (static_cast<std::size_t>(h) * num_states_ + s) * num_actions_ + a;
  }
  std::size_t num_triplets() const {
    return static_cast<std::size_t>(horizon_) * num_states_ * num_actions_;
  }

  std::span<const double> transition(int h, int s, int a) const {
    return {transitions_.data() + sa_index(h, s, a) * num_states_,
            static_cast<std::size_t>(num_states_)};
  }
  double reward_mean(int h, int s, int a) const {
    return reward_means_[sa_index(h, s, a)];
  }
  RewardSpec reward(int h, int s, int a) const {
    return {family_, reward_mean(h, s, a)};
  }
  std::span<const double> initial() const { return initial_; }

  bool available(int h, int s, int a) const {
    return available_.empty() || available_[sa_index(h, s, a)] != 0;
  }
  bool all_available() const { return available_.empty(); }
  int num_available(int h, int s) const;

  const std::vector<double>& transitions() const { return transitions_; }
  const std::vector<double>& reward_means() const { return reward_means_; }
  /// Empty when every action is available.
  const std::vector<std::uint8_t>& availability() const { return available_; }

  Mdp with_reward_means(std::vector<double> reward_means) const;

  bool operator==(const Mdp&) const = default;

 private:
  int num_states_;
  int num_actions_;
  int horizon_;
  std::vector<double> transitions_;
  RewardFamily family_;
  std::vector<double> reward_means_;
  std::vector<double> initial_;
  std::vector<std::uint8_t> available_;
};

/// Deterministic Markov policy: one action per (h, s).
class DeterministicPolicy {
 public:
  DeterministicPolicy() = default;
  DeterministicPolicy(int horizon, int num_states, int fill_action = 0)
      : horizon_(horizon),
        num_states_(num_states),
        actions_(static_cast<std::size_t>(horizon) * num_states, fill_action) {}

  int horizon() const { return horizon_; }
  int num_states() const { return num_states_; }
  int operator()(int h, int s) const {
    return actions_[static_cast<std::size_t>(h) * num_states_ + s];
  }
  void set(int h, int s, int a) {
    actions_[static_cast<std::size_t>(h) * num_states_ + s] = a;
  }
  const std::vector<int>& table() const { return actions_; }
  std::vector<int>& table() { return actions_; }

  bool operator==(const DeterministicPolicy&) const = default;
  auto operator<=>(const DeterministicPolicy& other) const {
    return actions_ <=> other.actions_;
  }

 private:
  int horizon_ = 0;
  int num_states_ = 0;
  std::vector<int> actions_;
};

/// Throws kInvalidInput when the policy has the wrong shape or takes an
/// unavailable action.
void validate_policy(const Mdp& m, const DeterministicPolicy& pi);

struct OptimalSolution {
  int num_states = 0;
  int num_actions = 0;
  int horizon = 0;
  std::vector<double> qstar;  // H x S x A
  std::vector<double> vstar;  // (H + 1) x S, last stage is the zero boundary
  double v0star = 0.0;        // sum_s p_0(s) V*_0(s)
  std::vector<std::vector<int>> opt_actions;  // per (h, s), ascending
  std::vector<double> gaps;   // V* - Q*, zero on masked actions
  double delta_min = 0.0;     // +inf when degenerate
  double delta_max = 0.0;
  bool degenerate = false;    // no strictly positive gap anywhere
  int zmul = 0;

  double q(int h, int s, int a) const { return qstar[idx(h, s, a)]; }
  double v(int h, int s) const {
    return vstar[static_cast<std::size_t>(h) * num_states + s];
  }
  double gap(int h, int s, int a) const { return gaps[idx(h, s, a)]; }
  const std::vector<int>& optimal_actions(int h, int s) const {
    return opt_actions[static_cast<std::size_t>(h) * num_states + s];
  }
  bool is_optimal(int h, int s, int a) const;

 private:
  std::size_t idx(int h, int s, int a) const {
    return (static_cast<std::size_t>(h) * num_states + s) * num_actions + a;
  }
};

struct PolicyValue {
  std::vector<double> values;  // (H + 1) x S, V^pi_h(s)
  double value0 = 0.0;         // sum_s p_0(s) V^pi_0(s)

  double v(int h, int s, int num_states) const {
    return values[static_cast<std::size_t>(h) * num_states + s];
  }
};

struct OccupancyTensor {
  int num_states = 0;
  int num_actions = 0;
  int horizon = 0;
  std::vector<double> rho;        // H x S x A
  std::vector<double> rho_state;  // H x S

  double sa(int h, int s, int a) const {
    return rho[(static_cast<std::size_t>(h) * num_states + s) * num_actions + a];
  }
  double state(int h, int s) const {
    return rho_state[static_cast<std::size_t>(h) * num_states + s];
  }
};

OptimalSolution backward_induction(const Mdp& m);

PolicyValue policy_value(const Mdp& m, const DeterministicPolicy& pi);

OccupancyTensor occupancy(const Mdp& m, const DeterministicPolicy& pi);

/// Gamma(pi) = V*_0 - V^pi_0. Also evaluates the occupancy-weighted action
/// gap sum and throws kNumericalFailure if the two disagree beyond 1e-9.
double policy_gap(const Mdp& m, const OptimalSolution& sol,
                  const DeterministicPolicy& pi);

/// Number of deterministic policies respecting the availability mask, or
/// nullopt when it exceeds 2^63.
std::optional<std::uint64_t> count_policies(const Mdp& m);

/// Lexicographic stream over all deterministic policies. Entry (0, 0) is the
/// most significant digit; within an entry actions ascend over the available
/// ones. Single consumer.
class PolicyEnumerator {
 public:
  /// Throws kCapacityExceeded when the policy count exceeds max_count.
  explicit PolicyEnumerator(const Mdp& m,
                            std::uint64_t max_count = kDefaultPolicyCap);

  /// Writes the next policy into `out`; false when exhausted.
  bool next(DeterministicPolicy& out);
  std::uint64_t size() const { return total_; }

 private:
  std::vector<std::vector<int>> choices_;  // per (h, s)
  std::vector<std::size_t> cursor_;
  int horizon_;
  int num_states_;
  std::uint64_t total_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<DeterministicPolicy> enumerate_policies(
    const Mdp& m, std::uint64_t max_count = kDefaultPolicyCap);

}  // namespace regret_frontier
