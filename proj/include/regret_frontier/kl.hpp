#pragma once

#include <optional>
#include <span>
#include <vector>

#include "regret_frontier/mdp.hpp"

namespace regret_frontier {

// All divergences are in nats.

/// KL(p || q) for categorical distributions; +inf when p is not absolutely
/// continuous w.r.t. q. 0 log 0 = 0.
double kl_categorical(std::span<const double> p, std::span<const double> q);

/// KL between unit-variance Gaussians: (mu1 - mu2)^2 / 2.
double kl_gaussian_unit(double mu1, double mu2);

/// kl(x, y) between Bernoulli(x) and Bernoulli(y).
double kl_bernoulli(double x, double y);

struct KinfResult {
  double value = 0.0;
  std::optional<std::vector<double>> argmin_transition;
  std::optional<double> argmin_reward_mean;
  double dual_variable = 0.0;
  int iterations = 0;
};

/// min KL(p || q) over distributions q on the same index set subject to
/// q.V >= c, solved through the one-dimensional concave dual
///
///   max_{0 <= lambda <= 1/(max_i V_i - c)} sum_i p_i log(1 - lambda (V_i - c)),
///
/// with q_i = p_i / (1 - lambda (V_i - c)) on supp(p). When the maximizer sits
/// on the pole bound (possible only if no argmax of V is in supp(p)), the
/// missing mass goes to the first argmax of V. Value is +inf with no argmin
/// when c >= max_i V_i and p.V < c.
KinfResult kinf_transition(std::span<const double> p, std::span<const double> values,
                           double c);

/// Cost of moving a reward distribution's mean from `mean` up to
/// `mean + increase` (increase >= 0): Gaussian (increase^2)/2, Bernoulli
/// kl(mean, mean + increase), +inf when the target leaves [0, 1).
double reward_increase_cost(RewardFamily family, double mean, double increase);

enum class LocalComplexityMode {
  kJoint,       // reward mean and transition row may both move
  kRewardOnly,  // transitions are known, only the reward mean moves
};

/// K_{s,a,h}: the cheapest local change at a sub-optimal (s, a, h) making
/// reward_mean + p_bar . V*_{h+1} reach V*_h(s). The joint problem is a
/// golden-section search over how much of the gap the reward covers, each
/// side being closed form (reward) or a Kinf dual (transition).
/// Throws kOptimalActionQueried for optimal or masked actions.
KinfResult local_complexity(const Mdp& m, const OptimalSolution& sol, int s, int a, int h,
                            LocalComplexityMode mode = LocalComplexityMode::kJoint);

}  // namespace regret_frontier
