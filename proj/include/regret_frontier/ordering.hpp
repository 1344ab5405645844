#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regret_frontier/instances.hpp"
#include "regret_frontier/mdp.hpp"

namespace regret_frontier {

struct OrderingCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;  // lhs <= rhs up to 1e-9 relative
};

struct OrderingReport {
  double no_dynamics = 0.0;
  std::optional<double> exact;        // semi-bandit program, Gaussian rewards only
  std::optional<double> closed_form;  // tree instances
  std::optional<TreeSpec> tree;
  double sa_over_delta_min = 0.0;
  double sa_over_delta_max = 0.0;
  std::vector<OrderingCheck> checks;

  bool all_hold() const;
};

/// Evaluates the bound without dynamics constraint, the exact program where
/// it is computable and, on tree instances, the closed form, then checks
///   no_dynamics <= exact,
///   (1 - alpha) SA / delta_min <= exact and closed form      (kappa = 0 trees)
///   exact <= 12 (1 - alpha) SA / delta_max                   (kappa > 0 trees).
OrderingReport verify_bound_ordering(const Mdp& m, double alpha);

}  // namespace regret_frontier
