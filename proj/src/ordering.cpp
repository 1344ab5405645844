#include "regret_frontier/ordering.hpp"

#include <algorithm>

#include "regret_frontier/error.hpp"
#include "regret_frontier/lower_bound.hpp"
#include "regret_frontier/semi_bandit.hpp"

namespace regret_frontier {
namespace {

OrderingCheck check(std::string name, double lhs, double rhs) {
  const bool holds = lhs <= rhs + 1e-9 * std::max(1.0, std::abs(rhs));
  return {std::move(name), lhs, rhs, holds};
}

}  // namespace

bool OrderingReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

OrderingReport verify_bound_ordering(const Mdp& m, double alpha) {
  validate_alpha(alpha);
  OrderingReport report;
  try {
    report.tree = infer_tree_spec(m);
  } catch (const Error&) {
  }
  const auto sol = backward_induction(m);
  if (sol.degenerate) throw Error(ErrorCode::kDegenerateGaps, "every action gap is zero");

  const double actions = report.tree ? report.tree->leaf_actions : m.num_actions();
  const double sa = (1.0 - alpha) * m.num_states() * actions;
  report.sa_over_delta_min = sa / sol.delta_min;
  report.sa_over_delta_max = sa / sol.delta_max;

  if (m.reward_family() == RewardFamily::kGaussianUnitVariance) {
    const auto problem = build_problem(m, alpha);
    report.no_dynamics = solve_no_dynamics(m, problem).value;
    report.exact = solve(problem).value;
  } else {
    report.no_dynamics = no_dynamics_bound(m, alpha, NoDynamicsMode::kKnownDynamics).value;
  }
  if (report.exact) {
    report.checks.push_back(check("no_dynamics <= exact", report.no_dynamics, *report.exact));
  }

  if (report.tree) {
    report.closed_form = tree_closed_form(*report.tree, alpha).value;
    report.checks.push_back(
        check("no_dynamics <= closed_form", report.no_dynamics, *report.closed_form));
    if (report.tree->kappa == 0.0) {
      report.checks.push_back(
          check("sa_over_delta_min <= closed_form", report.sa_over_delta_min, *report.closed_form));
      if (report.exact) {
        report.checks.push_back(
            check("sa_over_delta_min <= exact", report.sa_over_delta_min, *report.exact));
      }
    } else {
      const double cap = 12.0 * report.sa_over_delta_max;
      report.checks.push_back(check("closed_form <= 12 sa_over_delta_max", *report.closed_form, cap));
      if (report.exact) {
        report.checks.push_back(check("exact <= 12 sa_over_delta_max", *report.exact, cap));
      }
    }
  }
  return report;
}

}  // namespace regret_frontier
