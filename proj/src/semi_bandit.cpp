#include "regret_frontier/semi_bandit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "regret_frontier/error.hpp"
#include "regret_frontier/optimality.hpp"

namespace regret_frontier {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGapIdentityTolerance = 1e-9;

using Eigen::ArrayXd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

bool is_tree(const Mdp& m) {
  try {
    infer_tree_spec(m);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// Barrier state for the program in rescaled weights u (omega = scale * u).
struct Barrier {
  const MatrixXd& phi;  // n x d
  const MatrixXd& w;    // c x d, squared features of constrained policies
  const VectorXd& b;    // c
  const VectorXd& gap;  // n

  // +inf outside the domain.
  double value(const VectorXd& u, double t) const {
    if ((u.array() <= 0.0).any()) return kInf;
    const VectorXd d = phi.transpose() * u;
    if ((d.array() <= 0.0).any()) return kInf;
    const VectorXd g = w * d.cwiseInverse();
    const ArrayXd s = b.array() - g.array();
    if ((s <= 0.0).any()) return kInf;
    return t * gap.dot(u) - s.log().sum() - u.array().log().sum();
  }

  void derivatives(const VectorXd& u, double t, VectorXd& grad, MatrixXd& hess) const {
    const ArrayXd d = (phi.transpose() * u).array();
    const VectorXd inv_d = d.inverse().matrix();
    const ArrayXd s = b.array() - (w * inv_d).array();
    // Columns are the gradients of each constraint function.
    const MatrixXd wd2 = w.array().rowwise() / (d * d).transpose();
    const MatrixXd grad_g = -phi * wd2.transpose();  // n x c
    const VectorXd inv_s = s.inverse().matrix();
    grad = t * gap + grad_g * inv_s - u.cwiseInverse();
    const ArrayXd curvature = 2.0 * (w.transpose() * inv_s).array() / (d * d * d);
    hess = phi * curvature.matrix().asDiagonal() * phi.transpose();
    hess.noalias() += grad_g * inv_s.cwiseAbs2().asDiagonal() * grad_g.transpose();
    hess.diagonal() += u.cwiseInverse().cwiseAbs2();
  }
};

}  // namespace

std::vector<DeterministicPolicy> default_policy_set(const Mdp& m, std::uint64_t cap) {
  if (is_tree(m)) {
    auto paths = reduce_to_paths(m);
    if (paths.size() > cap) {
      throw Error(ErrorCode::kCapacityExceeded, "tree has more paths than the policy cap");
    }
    return paths;
  }
  return enumerate_policies(m, cap);
}

SemiBanditProblem build_problem(const Mdp& m, double alpha,
                                std::vector<DeterministicPolicy> policy_set) {
  validate_alpha(alpha);
  if (m.reward_family() != RewardFamily::kGaussianUnitVariance) {
    throw Error(ErrorCode::kUnsupportedRewardFamily,
                "the policy program needs unit-variance Gaussian rewards");
  }
  if (policy_set.empty()) policy_set = default_policy_set(m);

  const auto sol = backward_induction(m);
  SemiBanditProblem problem;
  problem.num_states = m.num_states();
  problem.num_actions = m.num_actions();
  problem.horizon = m.horizon();
  problem.theta = m.reward_means();
  problem.alpha = alpha;
  problem.vstar0 = sol.v0star;
  problem.action_gaps = sol.gaps;
  problem.optimal_state_support = optimal_support(m, sol);
  problem.triplet_class.assign(m.num_triplets(), TripletClass::kMasked);
  for (int h = 0; h < m.horizon(); ++h) {
    for (int s = 0; s < m.num_states(); ++s) {
      for (int a = 0; a < m.num_actions(); ++a) {
        if (!m.available(h, s, a)) continue;
        problem.triplet_class[m.sa_index(h, s, a)] =
            sol.is_optimal(h, s, a) ? TripletClass::kOptimal : TripletClass::kSuboptimal;
      }
    }
  }

  const auto star = occupancy(m, greedy_optimal_policy(sol));
  double theta_star = 0.0;
  for (std::size_t i = 0; i < star.rho.size(); ++i) theta_star += problem.theta[i] * star.rho[i];

  int id = 0;
  for (auto& pi : policy_set) {
    validate_policy(m, pi);
    PolicyFeature f;
    f.id = id;
    f.phi = occupancy(m, pi).rho;
    double theta_phi = 0.0;
    for (std::size_t i = 0; i < f.phi.size(); ++i) theta_phi += problem.theta[i] * f.phi[i];
    const double direct = policy_gap(m, sol, pi);
    if (std::abs((theta_star - theta_phi) - direct) > kGapIdentityTolerance) {
      throw Error(ErrorCode::kNumericalFailure,
                  "policy gap from features disagrees with the direct gap");
    }
    f.gap = direct <= kTieTolerance ? 0.0 : direct;
    if (f.gap == 0.0) problem.optimal_ids.push_back(id);
    f.policy = std::move(pi);
    problem.policies.push_back(std::move(f));
    ++id;
  }
  return problem;
}

AllocationOmega solve(const SemiBanditProblem& problem, const SolverOptions& options) {
  validate_alpha(problem.alpha);
  const auto& pols = problem.policies;
  std::vector<int> sub;
  for (std::size_t i = 0; i < pols.size(); ++i) {
    if (pols[i].gap > 0.0) sub.push_back(static_cast<int>(i));
  }
  if (sub.empty()) {
    throw Error(ErrorCode::kDegenerateProblem, "no sub-optimal policy in the problem");
  }

  // Coordinates touched by an optimal policy have unbounded D and drop out.
  const std::size_t dim = problem.theta.size();
  std::vector<std::uint8_t> covered(dim, 0);
  for (int id : problem.optimal_ids) {
    for (std::size_t i = 0; i < dim; ++i) {
      if (pols[id].phi[i] > 0.0) covered[i] = 1;
    }
  }
  std::vector<std::size_t> coords;
  for (std::size_t i = 0; i < dim; ++i) {
    if (covered[i]) continue;
    for (int j : sub) {
      if (pols[j].phi[i] > 0.0) {
        coords.push_back(i);
        break;
      }
    }
  }

  const Eigen::Index n = static_cast<Eigen::Index>(sub.size());
  const Eigen::Index d = static_cast<Eigen::Index>(coords.size());
  MatrixXd phi(n, d);
  VectorXd gap(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    gap(j) = pols[sub[j]].gap;
    for (Eigen::Index i = 0; i < d; ++i) phi(j, i) = pols[sub[j]].phi[coords[i]];
  }
  std::vector<Eigen::Index> constrained;
  for (Eigen::Index j = 0; j < n; ++j) {
    if ((phi.row(j).array() > 0.0).any()) constrained.push_back(j);
  }
  const Eigen::Index c = static_cast<Eigen::Index>(constrained.size());
  MatrixXd w(c, d);
  VectorXd b(c);
  const double one_minus_alpha = 1.0 - problem.alpha;
  for (Eigen::Index r = 0; r < c; ++r) {
    w.row(r) = phi.row(constrained[r]).array().square();
    b(r) = gap(constrained[r]) * gap(constrained[r]) / (2.0 * one_minus_alpha);
  }

  AllocationOmega out;
  out.omega.assign(pols.size(), 0.0);
  out.unbounded.assign(pols.size(), 0);
  for (int id : problem.optimal_ids) out.unbounded[id] = 1;
  if (c == 0) {
    out.worst_constraint_slack = 1.0;
    return out;
  }

  // Uniform weights scaled so that every constraint has half its budget left.
  const VectorXd d_unit = phi.colwise().sum().transpose();
  const VectorXd g_unit = w * d_unit.cwiseInverse();
  const double scale = 2.0 * (g_unit.array() / b.array()).maxCoeff();
  const VectorXd b_scaled = scale * b;
  const Barrier barrier{phi, w, b_scaled, gap};

  VectorXd u = VectorXd::Ones(n);
  const double num_terms = static_cast<double>(n + c);
  double t = num_terms / gap.dot(u);
  VectorXd grad(n);
  MatrixXd hess(n, n);
  bool converged = false;
  for (int outer = 0; outer < options.max_outer_iterations; ++outer) {
    bool centered = false;
    for (int it = 0; it < options.max_newton_iterations; ++it) {
      barrier.derivatives(u, t, grad, hess);
      const VectorXd step = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(step);
      ++out.newton_steps;
      if (!std::isfinite(decrement)) {
        throw Error(ErrorCode::kSolverStalled, "Newton system became singular");
      }
      if (decrement <= 1e-8) {
        centered = true;
        break;
      }
      double len = 1.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (step(j) < 0.0) len = std::min(len, 0.99 * u(j) / -step(j));
      }
      const double f0 = barrier.value(u, t);
      while (len > 1e-16 && !(barrier.value(u + len * step, t) <= f0 - 0.25 * len * decrement)) {
        len *= 0.5;
      }
      // Decrease below the resolution of f0 counts as centered.
      if (len <= 1e-16 || !(barrier.value(u + len * step, t) < f0)) {
        centered = true;
        break;
      }
      u += len * step;
    }
    if (!centered) {
      throw Error(ErrorCode::kSolverStalled, "barrier centering did not converge");
    }
    if (num_terms / t <= options.gap_tolerance * gap.dot(u)) {
      converged = true;
      break;
    }
    t *= 10.0;
  }
  if (!converged) {
    throw Error(ErrorCode::kSolverStalled, "barrier method ran out of iterations");
  }

  for (Eigen::Index j = 0; j < n; ++j) out.omega[sub[j]] = scale * u(j);
  out.value = scale * gap.dot(u);
  out.duality_gap = scale * num_terms / t;
  const VectorXd dvec = scale * (phi.transpose() * u);
  const VectorXd g = w * dvec.cwiseInverse();
  out.worst_constraint_slack = ((b - g).array() / b.array()).minCoeff();
  return out;
}

double constraint_lhs(const SemiBanditProblem& problem, const AllocationOmega& alloc,
                      std::size_t index) {
  const auto& pols = problem.policies;
  const std::size_t dim = problem.theta.size();
  std::vector<double> d(dim, 0.0);
  for (std::size_t j = 0; j < pols.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      if (pols[j].phi[i] == 0.0) continue;
      d[i] += alloc.unbounded[j] ? kInf : alloc.omega[j] * pols[j].phi[i];
    }
  }
  double lhs = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double x = pols[index].phi[i];
    if (x == 0.0 || d[i] == kInf) continue;
    if (d[i] == 0.0) return kInf;
    lhs += x * x / d[i];
  }
  return lhs;
}

BoundReport tree_closed_form(const TreeSpec& spec, double alpha) {
  validate_tree_spec(spec);
  validate_alpha(alpha);
  const double S = spec.num_states();
  const double A = spec.leaf_actions;
  const int H = spec.depth;
  const double bracket = S - 2.0 + A * (S + 1.0) / 2.0 - 2.0 * (S - 1.0) / (A * (S + 1.0));
  double path_sum = 1.0;
  for (int h = 1; h <= H - 1; ++h) path_sum += 1.0 / (std::ldexp(1.0, H - 1 - h) * A);

  BoundReport report;
  report.kind = BoundKind::kTreeClosedForm;
  const double one_minus_alpha = 1.0 - alpha;
  report.extras["suboptimal_paths"] = static_cast<double>(spec.num_paths() - 1);
  report.extras["sa_over_delta_min"] = one_minus_alpha * S * A / spec.eps;
  if (spec.kappa == 0.0) {
    report.value = 2.0 * one_minus_alpha / spec.eps * bracket;
    report.extras["eta_per_policy"] = 2.0 * one_minus_alpha / (spec.eps * spec.eps) * path_sum;
    report.extras["upper_bound_only"] = 0.0;
    return report;
  }
  report.value = 8.0 * one_minus_alpha / spec.kappa * bracket;
  report.extras["eta_per_policy"] =
      8.0 * one_minus_alpha / (spec.kappa * spec.kappa) * path_sum;
  report.extras["upper_bound_only"] = 1.0;
  report.extras["cap_sa_over_delta_max"] = 12.0 * one_minus_alpha * S * A / spec.kappa;
  report.extras["sa_over_delta_max"] = one_minus_alpha * S * A / spec.kappa;

  const Mdp m = tree_mdp(spec);
  const auto sol = backward_induction(m);
  double inverse_gaps = 0.0;
  for (int h = 0; h < m.horizon(); ++h) {
    for (int s = 0; s < m.num_states(); ++s) {
      for (int a = 0; a < m.num_actions(); ++a) {
        if (m.available(h, s, a) && !sol.is_optimal(h, s, a)) inverse_gaps += 1.0 / sol.gap(h, s, a);
      }
    }
  }
  report.extras["sum_inverse_gaps"] = inverse_gaps;
  report.extras["inverse_gap_floor"] = (std::log2(S + 1.0) + A - 3.0) / spec.eps;
  return report;
}

AllocationEta solve_no_dynamics(const Mdp& m, const SemiBanditProblem& problem) {
  AllocationEta alloc;
  alloc.num_states = problem.num_states;
  alloc.num_actions = problem.num_actions;
  alloc.horizon = problem.horizon;
  alloc.alpha = problem.alpha;
  alloc.eta.assign(problem.action_gaps.size(), 0.0);
  alloc.unbounded.assign(problem.action_gaps.size(), 0);
  const int S = problem.num_states, A = problem.num_actions;
  bool any = false;
  for (int h = 0; h < problem.horizon; ++h) {
    for (int s = 0; s < S; ++s) {
      const bool on_support = problem.optimal_state_support[static_cast<std::size_t>(h) * S + s];
      for (int a = 0; a < A; ++a) {
        const std::size_t i = (static_cast<std::size_t>(h) * S + s) * A + a;
        if (problem.triplet_class[i] == TripletClass::kOptimal) {
          alloc.unbounded[i] = 1;
        } else if (problem.triplet_class[i] == TripletClass::kSuboptimal && on_support) {
          const double gap = problem.action_gaps[i];
          alloc.eta[i] = 2.0 * (1.0 - problem.alpha) / (gap * gap);
          alloc.value += alloc.eta[i] * gap;
          any = true;
        }
      }
    }
  }
  if (!any) {
    throw Error(ErrorCode::kDegenerateGaps,
                "no sub-optimal action on the optimal state support");
  }
  alloc.dynamics_residual = dynamics_residual(m, alloc);
  alloc.satisfies_dynamics = alloc.dynamics_residual <= 1e-8;
  return alloc;
}

}  // namespace regret_frontier
