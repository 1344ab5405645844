#include "regret_frontier/lower_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "regret_frontier/error.hpp"
#include "regret_frontier/optimality.hpp"

namespace regret_frontier {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

AllocationEta empty_allocation(const Mdp& m, double alpha) {
  AllocationEta alloc;
  alloc.num_states = m.num_states();
  alloc.num_actions = m.num_actions();
  alloc.horizon = m.horizon();
  alloc.eta.assign(m.num_triplets(), 0.0);
  alloc.unbounded.assign(m.num_triplets(), 0);
  alloc.alpha = alpha;
  return alloc;
}

void mark_optimal_unbounded(const Mdp& m, const OptimalSolution& sol, AllocationEta& alloc) {
  for (int h = 0; h < m.horizon(); ++h) {
    for (int s = 0; s < m.num_states(); ++s) {
      for (int a : sol.optimal_actions(h, s)) alloc.unbounded[m.sa_index(h, s, a)] = 1;
    }
  }
}

void finalize(const Mdp& m, const OptimalSolution& sol, AllocationEta& alloc) {
  alloc.value = 0.0;
  for (std::size_t i = 0; i < alloc.eta.size(); ++i) {
    if (!alloc.unbounded[i]) alloc.value += alloc.eta[i] * sol.gaps[i];
  }
  alloc.dynamics_residual = dynamics_residual(m, alloc);
  alloc.satisfies_dynamics = alloc.dynamics_residual <= 1e-8;
}

template <typename Fn>
void for_each_suboptimal(const Mdp& m, const OptimalSolution& sol, Fn&& fn) {
  for (int h = 0; h < m.horizon(); ++h) {
    for (int s = 0; s < m.num_states(); ++s) {
      for (int a = 0; a < m.num_actions(); ++a) {
        if (m.available(h, s, a) && !sol.is_optimal(h, s, a)) fn(h, s, a);
      }
    }
  }
}

OptimalSolution solve_nondegenerate(const Mdp& m) {
  auto sol = backward_induction(m);
  if (sol.degenerate) {
    throw Error(ErrorCode::kDegenerateGaps, "every action gap is zero");
  }
  return sol;
}

// Sum of (1 - alpha) gap / K over the triplets accepted by `include`.
template <typename Include>
BoundReport decoupled_bound(const Mdp& m, const OptimalSolution& sol, double alpha,
                            BoundKind kind, LocalComplexityMode mode, Include&& include) {
  BoundReport report;
  report.kind = kind;
  AllocationEta alloc = empty_allocation(m, alpha);
  mark_optimal_unbounded(m, sol, alloc);
  double total = 0.0;
  const bool gaussian_reward_only = mode == LocalComplexityMode::kRewardOnly &&
                                    m.reward_family() == RewardFamily::kGaussianUnitVariance;
  for_each_suboptimal(m, sol, [&](int h, int s, int a) {
    if (!include(h, s)) return;
    const auto k = local_complexity(m, sol, s, a, h, mode);
    TripletContribution c{h, s, a, sol.gap(h, s, a), k.value, 0.0};
    if (gaussian_reward_only) {
      // gap / (gap^2 / 2) without the rounding of the intermediate square.
      c.contribution = 2.0 / c.gap;
      alloc.eta[m.sa_index(h, s, a)] = 2.0 * (1.0 - alpha) / (c.gap * c.gap);
    } else if (std::isfinite(k.value) && k.value > 0.0) {
      c.contribution = c.gap / k.value;
      alloc.eta[m.sa_index(h, s, a)] = (1.0 - alpha) / k.value;
    }
    total += c.contribution;
    report.per_triplet.push_back(c);
  });
  report.value = (1.0 - alpha) * total;
  finalize(m, sol, alloc);
  report.allocation = std::move(alloc);
  return report;
}

}  // namespace

bool AllocationEta::any_unbounded() const {
  return std::any_of(unbounded.begin(), unbounded.end(), [](auto x) { return x != 0; });
}

double dynamics_residual(const Mdp& m, const AllocationEta& alloc) {
  if (alloc.any_unbounded()) return kInf;
  const int S = m.num_states(), A = m.num_actions();
  double worst = 0.0;
  for (int s = 0; s < S; ++s) {
    if (m.initial()[s] > 0.0) continue;
    double out = 0.0;
    for (int a = 0; a < A; ++a) out += alloc.eta[m.sa_index(0, s, a)];
    worst = std::max(worst, std::abs(out));
  }
  for (int h = 1; h < m.horizon(); ++h) {
    std::vector<double> inflow(S, 0.0);
    for (int sp = 0; sp < S; ++sp) {
      for (int ap = 0; ap < A; ++ap) {
        const double mass = alloc.eta[m.sa_index(h - 1, sp, ap)];
        if (mass == 0.0) continue;
        const auto row = m.transition(h - 1, sp, ap);
        for (int s = 0; s < S; ++s) inflow[s] += row[s] * mass;
      }
    }
    for (int s = 0; s < S; ++s) {
      double out = 0.0;
      for (int a = 0; a < A; ++a) out += alloc.eta[m.sa_index(h, s, a)];
      worst = std::max(worst, std::abs(out - inflow[s]));
    }
  }
  return worst;
}

const char* bound_kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::kFullSupport: return "full_support";
    case BoundKind::kPinskerUpper: return "pinsker_upper";
    case BoundKind::kNoDynamicsDecoupled: return "no_dynamics_decoupled";
    case BoundKind::kSemiBanditExact: return "semi_bandit_exact";
    case BoundKind::kTreeClosedForm: return "tree_closed_form";
  }
  return "unknown";
}

void validate_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "alpha must lie in [0, 1)");
  }
}

BoundReport full_support_bound(const Mdp& m, double alpha) {
  validate_alpha(alpha);
  const auto sol = solve_nondegenerate(m);
  const auto unique = check_unique_optimal_rho(m, sol);
  if (!unique.holds) {
    throw Error(ErrorCode::kAssumptionViolated,
                "return-optimal policies induce different state distributions");
  }
  for (double x : unique.rho_star->rho_state) {
    if (!(x > 0.0)) {
      throw Error(ErrorCode::kNotFullSupport,
                  "the optimal state occupancy is zero somewhere");
    }
  }
  auto report = decoupled_bound(m, sol, alpha, BoundKind::kFullSupport,
                                LocalComplexityMode::kJoint, [](int, int) { return true; });
  double min_rho = kInf;
  for (double x : unique.rho_star->rho_state) min_rho = std::min(min_rho, x);
  report.extras["min_optimal_occupancy"] = min_rho;
  return report;
}

BoundReport pinsker_upper_bound(const Mdp& m, PinskerFactor factor) {
  const auto sol = solve_nondegenerate(m);
  BoundReport report;
  report.kind = BoundKind::kPinskerUpper;
  const int H = m.horizon();
  for_each_suboptimal(m, sol, [&](int h, int s, int a) {
    // 1-based stage number is h + 1.
    const double stages = factor == PinskerFactor::kAsPrinted ? H - (h + 1) : H - h;
    TripletContribution c{h, s, a, sol.gap(h, s, a), 0.0, 0.0};
    c.complexity = c.gap * c.gap / (2.0 * stages * stages);
    c.contribution = 2.0 * stages * stages / c.gap;
    report.value += c.contribution;
    report.per_triplet.push_back(c);
  });
  report.extras["remaining_stage_factor"] = factor == PinskerFactor::kAsPrinted ? 0.0 : 1.0;
  return report;
}

BoundReport no_dynamics_bound(const Mdp& m, double alpha, NoDynamicsMode mode) {
  validate_alpha(alpha);
  const auto sol = solve_nondegenerate(m);
  if (mode == NoDynamicsMode::kGeneral) {
    return decoupled_bound(m, sol, alpha, BoundKind::kNoDynamicsDecoupled,
                           LocalComplexityMode::kJoint, [](int, int) { return true; });
  }
  const auto support = optimal_support(m, sol);
  const int S = m.num_states();
  auto report = decoupled_bound(
      m, sol, alpha, BoundKind::kNoDynamicsDecoupled, LocalComplexityMode::kRewardOnly,
      [&](int h, int s) { return support[static_cast<std::size_t>(h) * S + s] != 0; });
  if (report.per_triplet.empty()) {
    throw Error(ErrorCode::kDegenerateGaps,
                "no sub-optimal action on the optimal state support");
  }
  report.extras["known_dynamics"] = 1.0;
  return report;
}

BoundReport theorem_lower_bound(const Mdp& m, double alpha) {
  try {
    return full_support_bound(m, alpha);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotFullSupport && e.code() != ErrorCode::kAssumptionViolated) {
      throw;
    }
  }
  throw Error(ErrorCode::kUnsupported,
              "the general lower bound is not computable for this MDP; supported regimes "
              "are the full-support closed form, the known-dynamics semi-bandit program "
              "and the decoupled bound without dynamics constraint");
}

}  // namespace regret_frontier
