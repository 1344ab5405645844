#pragma once

#include <cstdint>
#include <vector>

#include "regret_frontier/instances.hpp"
#include "regret_frontier/lower_bound.hpp"
#include "regret_frontier/mdp.hpp"

namespace regret_frontier {

constexpr std::uint64_t kDefaultSemiBanditPolicyCap = 4096;

struct PolicyFeature {
  int id = 0;
  DeterministicPolicy policy;
  std::vector<double> phi;  // occupancy rho^pi_h(s, a), H x S x A
  double gap = 0.0;         // Gamma(pi), exactly 0 for optimal policies
};

enum class TripletClass : std::uint8_t { kMasked = 0, kOptimal = 1, kSuboptimal = 2 };

/// Lower-bound program with known dynamics and unknown Gaussian rewards,
/// written over mixtures of deterministic policies.
struct SemiBanditProblem {
  int num_states = 0;
  int num_actions = 0;
  int horizon = 0;
  std::vector<double> theta;  // reward means, H x S x A
  std::vector<PolicyFeature> policies;
  std::vector<int> optimal_ids;  // indices into `policies`
  double alpha = 0.0;
  double vstar0 = 0.0;
  std::vector<double> action_gaps;             // H x S x A
  std::vector<TripletClass> triplet_class;     // H x S x A
  std::vector<std::uint8_t> optimal_state_support;  // H x S
};

/// Path representatives for tree instances, otherwise every deterministic
/// policy. Throws kCapacityExceeded above `cap` policies.
std::vector<DeterministicPolicy> default_policy_set(
    const Mdp& m, std::uint64_t cap = kDefaultSemiBanditPolicyCap);

/// Computes features and gaps for `policy_set` (the default set when empty).
/// Throws kUnsupportedRewardFamily for non-Gaussian rewards and
/// kNumericalFailure when theta^T (phi* - phi) disagrees with the direct gap.
SemiBanditProblem build_problem(const Mdp& m, double alpha,
                                std::vector<DeterministicPolicy> policy_set = {});

struct SolverOptions {
  double gap_tolerance = 1e-9;  // barrier duality gap, relative to the value
  int max_outer_iterations = 80;
  int max_newton_iterations = 200;
};

/// Weights per policy. Optimal policies cost nothing and get unbounded
/// weight: `unbounded` is set and `omega` holds 0 there.
struct AllocationOmega {
  std::vector<double> omega;
  std::vector<std::uint8_t> unbounded;
  double value = 0.0;
  double worst_constraint_slack = 0.0;  // min over constraints of (b - g) / b
  double duality_gap = 0.0;
  int newton_steps = 0;
};

/// min sum omega_pi Gamma(pi) subject to, for every sub-optimal pi,
///   sum_i phi_pi,i^2 / D_i <= Gamma(pi)^2 / (2 (1 - alpha)),  D = sum omega phi.
/// Coordinates covered by an optimal policy have D = +inf. A zero D_i with a
/// nonzero phi_pi,i makes the constraint infeasible. Log-barrier interior point
/// with damped Newton steps.
/// Throws kDegenerateProblem (no sub-optimal policy) or kSolverStalled.
AllocationOmega solve(const SemiBanditProblem& problem, const SolverOptions& options = {});

/// Left-hand side sum_i phi_pi,i^2 / D_i of policy `index`'s constraint.
double constraint_lhs(const SemiBanditProblem& problem, const AllocationOmega& alloc,
                      std::size_t index);

/// Closed form for the tree instance,
///   (2 (1 - alpha) / eps) (S - 2 + A (S + 1) / 2 - 2 (S - 1) / (A (S + 1))),
/// with A the leaf action count. With kappa > 0 the value is the upper bound
/// (8 (1 - alpha) / kappa) times the same bracket. extras carries
/// eta_per_policy, sa_over_delta_min and, for kappa > 0, the 12 (1 - alpha) SA / kappa
/// cap and the sum of inverse gaps.
BoundReport tree_closed_form(const TreeSpec& spec, double alpha);

/// eta_h(s, a) = 2 (1 - alpha) / gap^2 on the sub-optimal triplets of the
/// optimal state support, unbounded on optimal actions.
/// Throws kDegenerateGaps.
AllocationEta solve_no_dynamics(const Mdp& m, const SemiBanditProblem& problem);

}  // namespace regret_frontier
