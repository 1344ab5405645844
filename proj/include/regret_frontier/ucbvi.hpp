#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "regret_frontier/mdp.hpp"

namespace regret_frontier {

struct UcbviConfig {
  std::uint64_t episodes = 1024;
  std::optional<double> delta;  // 1 / episodes when absent
  std::uint64_t seed = 0;
  std::uint64_t record_every = 1;
  bool deterministic_rewards = false;  // rewards equal their means

  double effective_delta() const;
};

/// Throws kInvalidInput unless episodes >= 1, record_every >= 1 and
/// delta in (0, 1).
void validate_config(const UcbviConfig& cfg);

struct TracePoint {
  std::uint64_t k = 0;
  double cum_regret = 0.0;
  std::uint64_t m_k = 0;  // episodes so far with a sub-optimal policy
  std::uint64_t optimism_violations = 0;
};

struct SimTrace {
  std::uint64_t seed = 0;
  std::uint64_t episodes = 0;
  double delta = 0.0;
  std::vector<TracePoint> series;     // every record_every episodes and the last one
  std::vector<double> episode_gaps;   // Gamma(pi_k), k = 1..K
  std::vector<std::uint64_t> visit_counts;  // N_K,h(s, a), H x S x A
  std::vector<double> reward_estimates;     // empirical means, 0 when unvisited
  std::vector<double> expected_visits;      // sum_k rho^{pi_k}_h(s, a)
  double cumulative_regret = 0.0;
  std::uint64_t suboptimal_episodes = 0;
  std::uint64_t optimism_violations = 0;
};

/// min(H, H sqrt(log_term / (2 n))), and H when n = 0.
double bonus(std::uint64_t n, int horizon, double log_term);

/// log(4 S A H K / delta).
double bonus_log_term(const Mdp& m, std::uint64_t episodes, double delta);

/// UCBVI with Chernoff-Hoeffding bonuses. Each episode plans on the empirical
/// model (unvisited pairs: reward 0, uniform next state) plus the bonus, acts
/// greedily (lowest action index on ties) and samples one trajectory from
/// SplitMix64(seed). An episode violates optimism when the p_0-weighted
/// optimistic value is below V*_0 - 1e-9.
SimTrace run(const Mdp& m, const UcbviConfig& cfg);

struct RegretIdentity {
  double policy_side = 0.0;  // sum_k Gamma(pi_k)
  double action_side = 0.0;  // sum expected visits * action gap
  bool holds = false;        // within 1e-6 relative
};

RegretIdentity regret_identity_check(const SimTrace& trace, const Mdp& m);

struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

/// Least squares of regret against log k over k in [K / 4, K].
LogFit log_regret_fit(const SimTrace& trace);
LogFit log_regret_fit(std::span<const std::uint64_t> k, std::span<const double> regret,
                      std::uint64_t episodes);

/// Smallest positive policy gap, by enumeration of deterministic policies.
/// Throws kDegenerateGaps when every policy is optimal.
double min_positive_policy_gap(const Mdp& m, std::uint64_t max_count = kDefaultPolicyCap);

/// 4 H^4 SA / G log L + 2 H^4 (SA)^{3/2} / G sqrt(log L) + SAH^2 + 2H with
/// L = 4 SAH K^2 and G the smallest positive policy gap.
double expected_regret_bound(const Mdp& m, std::uint64_t episodes, double gamma_min);

}  // namespace regret_frontier
