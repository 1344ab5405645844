#include "regret_frontier/optimality.hpp"

#include <algorithm>
#include <cmath>

namespace regret_frontier {
namespace {

constexpr double kOccupancyTolerance = 1e-9;
constexpr double kVisited = 1e-12;

bool is_return_optimal(const Mdp& m, const OptimalSolution& sol,
                       const DeterministicPolicy& pi) {
  return policy_value(m, pi).value0 >= sol.v0star - kTieTolerance;
}

bool is_bellman_optimal(const Mdp& m, const OptimalSolution& sol,
                        const DeterministicPolicy& pi) {
  for (int h = 0; h < m.horizon(); ++h) {
    for (int s = 0; s < m.num_states(); ++s) {
      if (!sol.is_optimal(h, s, pi(h, s))) return false;
    }
  }
  return true;
}

template <typename Fn>
void for_each_return_optimal(const Mdp& m, const OptimalSolution& sol,
                             std::uint64_t max_count, Fn&& fn) {
  PolicyEnumerator it(m, max_count);
  DeterministicPolicy pi;
  while (it.next(pi)) {
    if (is_return_optimal(m, sol, pi)) {
      if (!fn(pi)) return;
    }
  }
}

}  // namespace

OptimalPolicySets optimal_policy_sets(const Mdp& m, const OptimalSolution& sol,
                                      std::uint64_t max_count) {
  OptimalPolicySets out;
  PolicyEnumerator it(m, max_count);
  DeterministicPolicy pi;
  while (it.next(pi)) {
    if (is_return_optimal(m, sol, pi)) out.return_optimal.push_back(pi);
    if (is_bellman_optimal(m, sol, pi)) out.bellman_optimal.push_back(pi);
  }
  return out;
}

UniqueRhoCheck check_unique_optimal_rho(const Mdp& m, const OptimalSolution& sol,
                                        std::uint64_t max_count) {
  UniqueRhoCheck out;
  std::optional<OccupancyTensor> first;
  bool holds = true;
  for_each_return_optimal(m, sol, max_count, [&](const DeterministicPolicy& pi) {
    auto occ = occupancy(m, pi);
    if (!first) {
      first = std::move(occ);
      return true;
    }
    for (std::size_t i = 0; i < occ.rho_state.size(); ++i) {
      if (std::abs(occ.rho_state[i] - first->rho_state[i]) > kOccupancyTolerance) {
        holds = false;
        return false;
      }
    }
    return true;
  });
  out.holds = holds && first.has_value();
  if (out.holds) out.rho_star = std::move(first);
  return out;
}

bool check_opt_act_vs_rho(const Mdp& m, const OptimalSolution& sol,
                          std::uint64_t max_count) {
  bool ok = true;
  const int S = m.num_states();
  for_each_return_optimal(m, sol, max_count, [&](const DeterministicPolicy& pi) {
    const auto occ = occupancy(m, pi);
    const auto val = policy_value(m, pi);
    for (int h = 0; h < m.horizon() && ok; ++h) {
      for (int s = 0; s < S; ++s) {
        if (occ.state(h, s) <= kVisited) continue;
        if (!sol.is_optimal(h, s, pi(h, s)) ||
            std::abs(val.v(h, s, S) - sol.v(h, s)) > kTieTolerance) {
          ok = false;
          break;
        }
      }
    }
    return ok;
  });
  return ok;
}

DeterministicPolicy greedy_optimal_policy(const OptimalSolution& sol) {
  DeterministicPolicy pi(sol.horizon, sol.num_states);
  for (int h = 0; h < sol.horizon; ++h) {
    for (int s = 0; s < sol.num_states; ++s) pi.set(h, s, sol.optimal_actions(h, s).front());
  }
  return pi;
}

std::vector<std::uint8_t> optimal_support(const Mdp& m, const OptimalSolution& sol) {
  const int S = m.num_states(), H = m.horizon();
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(H) * S, 0);
  for (int s = 0; s < S; ++s) mask[s] = m.initial()[s] > 0.0 ? 1 : 0;
  for (int h = 0; h + 1 < H; ++h) {
    for (int s = 0; s < S; ++s) {
      if (!mask[static_cast<std::size_t>(h) * S + s]) continue;
      for (int a : sol.optimal_actions(h, s)) {
        const auto row = m.transition(h, s, a);
        for (int t = 0; t < S; ++t) {
          if (row[t] > 0.0) mask[static_cast<std::size_t>(h + 1) * S + t] = 1;
        }
      }
    }
  }
  return mask;
}

}  // namespace regret_frontier
