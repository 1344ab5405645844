#include "regret_frontier/kl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "regret_frontier/error.hpp"

namespace regret_frontier {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDualGradientTolerance = 1e-10;
constexpr int kMaxDualIterations = 200;
constexpr double kSplitTolerance = 1e-9;
constexpr double kInvPhi = 0.6180339887498949;

double xlogx_ratio(double x, double y) {
  if (x == 0.0) return 0.0;
  if (y == 0.0) return kInf;
  return x * std::log(x / y);
}

// Derivative of the dual objective and its slope at lambda, restricted to
// supp(p). Terms with a zero denominator make the derivative -inf.
struct DualEval {
  double grad;
  double curvature;
};

DualEval dual_eval(std::span<const double> p, std::span<const double> d, double lambda) {
  DualEval e{0.0, 0.0};
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    const double denom = 1.0 - lambda * d[i];
    if (denom <= 0.0) return {-kInf, -kInf};
    e.grad -= p[i] * d[i] / denom;
    e.curvature -= p[i] * d[i] * d[i] / (denom * denom);
  }
  return e;
}

}  // namespace

double kl_categorical(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "kl_categorical needs equal lengths");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += xlogx_ratio(p[i], q[i]);
  return std::max(total, 0.0);
}

double kl_gaussian_unit(double mu1, double mu2) {
  const double d = mu1 - mu2;
  return 0.5 * d * d;
}

double kl_bernoulli(double x, double y) {
  if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0) {
    throw Error(ErrorCode::kInvalidInput, "Bernoulli parameters must lie in [0, 1]");
  }
  return std::max(xlogx_ratio(x, y) + xlogx_ratio(1.0 - x, 1.0 - y), 0.0);
}

KinfResult kinf_transition(std::span<const double> p, std::span<const double> values,
                           double c) {
  if (p.size() != values.size() || p.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "kinf_transition needs len(p) = len(V) > 0");
  }
  KinfResult out;
  double mean = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) mean += p[i] * values[i];
  if (mean >= c) {
    out.argmin_transition = std::vector<double>(p.begin(), p.end());
    return out;
  }
  const auto vmax_it = std::max_element(values.begin(), values.end());
  const double vmax = *vmax_it;
  if (c >= vmax) {
    out.value = kInf;
    return out;
  }

  std::vector<double> d(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) d[i] = values[i] - c;
  const double dmax = vmax - c;
  const double lambda_max = 1.0 / dmax;

  bool argmax_in_support = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0 && values[i] == vmax) argmax_in_support = true;
  }

  double lambda = 0.0;
  bool on_boundary = false;
  if (!argmax_in_support && dual_eval(p, d, lambda_max).grad >= 0.0) {
    lambda = lambda_max;
    on_boundary = true;
  } else {
    // g' is decreasing on [0, lambda_max) with g'(0) > 0; safeguarded Newton.
    double lo = 0.0, hi = lambda_max;
    lambda = 0.0;
    int it = 0;
    for (; it < kMaxDualIterations; ++it) {
      const auto e = dual_eval(p, d, lambda);
      if (std::abs(e.grad) <= kDualGradientTolerance) break;
      if (e.grad > 0.0) lo = lambda; else hi = lambda;
      double candidate = lambda - e.grad / e.curvature;
      if (!(candidate > lo && candidate < hi) || !std::isfinite(candidate)) {
        candidate = 0.5 * (lo + hi);
      }
      if (candidate == lambda || hi - lo <= 1e-17 * hi) break;
      lambda = candidate;
    }
    if (it == kMaxDualIterations) {
      throw Error(ErrorCode::kNumericalFailure, "Kinf dual search did not converge");
    }
    out.iterations = it;
  }

  std::vector<double> q(p.size(), 0.0);
  double mass = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    q[i] = p[i] / (1.0 - lambda * d[i]);
    mass += q[i];
  }
  if (on_boundary) {
    q[static_cast<std::size_t>(vmax_it - values.begin())] += std::max(1.0 - mass, 0.0);
    mass = std::max(mass, 1.0);
  }
  for (double& x : q) x /= mass;

  out.value = kl_categorical(p, q);
  out.dual_variable = lambda;
  out.argmin_transition = std::move(q);
  return out;
}

double reward_increase_cost(RewardFamily family, double mean, double increase) {
  if (increase <= 0.0) return 0.0;
  switch (family) {
    case RewardFamily::kGaussianUnitVariance:
      return 0.5 * increase * increase;
    case RewardFamily::kBernoulli: {
      const double target = mean + increase;
      if (target >= 1.0) return kInf;
      return kl_bernoulli(mean, target);
    }
  }
  return kInf;
}

KinfResult local_complexity(const Mdp& m, const OptimalSolution& sol, int s, int a, int h,
                            LocalComplexityMode mode) {
  if (h < 0 || h >= m.horizon() || s < 0 || s >= m.num_states() || a < 0 ||
      a >= m.num_actions()) {
    throw Error(ErrorCode::kInvalidInput, "triplet out of range");
  }
  if (!m.available(h, s, a) || sol.is_optimal(h, s, a)) {
    throw Error(ErrorCode::kOptimalActionQueried,
                "local complexity is only defined for sub-optimal actions");
  }
  const int S = m.num_states();
  const double gap = sol.gap(h, s, a);
  const double r = m.reward_mean(h, s, a);
  const auto p = m.transition(h, s, a);
  std::vector<double> next(S);
  for (int t = 0; t < S; ++t) next[t] = sol.v(h + 1, t);
  double base = 0.0;
  for (int t = 0; t < S; ++t) base += p[t] * next[t];
  const double vmax = *std::max_element(next.begin(), next.end());

  const auto reward_cost = [&](double x) {
    return reward_increase_cost(m.reward_family(), r, x);
  };

  KinfResult out;
  if (mode == LocalComplexityMode::kRewardOnly) {
    out.value = reward_cost(gap);
    if (std::isfinite(out.value)) {
      out.argmin_reward_mean = r + gap;
      out.argmin_transition = std::vector<double>(p.begin(), p.end());
    }
    return out;
  }

  // Split: reward covers x, transitions cover gap - x.
  const auto objective = [&](double x) {
    const double rc = reward_cost(x);
    if (!std::isfinite(rc)) return kInf;
    return rc + kinf_transition(p, next, base + (gap - x)).value;
  };

  double lo = std::max(0.0, gap - (vmax - base));
  double hi = gap;
  if (m.reward_family() == RewardFamily::kBernoulli) hi = std::min(hi, 1.0 - r);
  if (lo >= hi && !(lo == hi && std::isfinite(objective(lo)))) {
    out.value = kInf;
    return out;
  }

  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  int it = 0;
  while (hi - lo > kSplitTolerance && it < 200) {
    ++it;
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = objective(x2);
    }
  }
  double best_x = 0.5 * (lo + hi);
  double best = objective(best_x);
  // Closed endpoints of the split range can beat the interior probe.
  for (double x : {0.0, gap}) {
    const double f = objective(x);
    if (f < best) {
      best = f;
      best_x = x;
    }
  }
  if (!std::isfinite(best)) {
    out.value = kInf;
    return out;
  }
  const auto transition = kinf_transition(p, next, base + (gap - best_x));
  out.value = best;
  out.argmin_reward_mean = r + best_x;
  out.argmin_transition = transition.argmin_transition;
  out.dual_variable = transition.dual_variable;
  out.iterations = it;
  return out;
}

}  // namespace regret_frontier
