#include "regret_frontier/ucbvi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "regret_frontier/error.hpp"
#include "regret_frontier/rng.hpp"

namespace regret_frontier {

double UcbviConfig::effective_delta() const {
  return delta ? *delta : 1.0 / static_cast<double>(episodes);
}

void validate_config(const UcbviConfig& cfg) {
  if (cfg.episodes < 1) throw Error(ErrorCode::kInvalidInput, "episodes must be at least 1");
  if (cfg.record_every < 1) throw Error(ErrorCode::kInvalidInput, "record_every must be at least 1");
  const double d = cfg.effective_delta();
  // K = 1 gives the default delta = 1, which is accepted as the boundary case.
  if (!(d > 0.0 && (d < 1.0 || (!cfg.delta && d == 1.0)))) {
    throw Error(ErrorCode::kInvalidInput, "delta must lie in (0, 1)");
  }
}

double bonus(std::uint64_t n, int horizon, double log_term) {
  const double h = horizon;
  if (n == 0) return h;
  return std::min(h, h * std::sqrt(log_term / (2.0 * static_cast<double>(n))));
}

double bonus_log_term(const Mdp& m, std::uint64_t episodes, double delta) {
  return std::log(4.0 * m.num_states() * m.num_actions() * m.horizon() *
                  static_cast<double>(episodes) / delta);
}

SimTrace run(const Mdp& m, const UcbviConfig& cfg) {
  validate_config(cfg);
  const int S = m.num_states(), A = m.num_actions(), H = m.horizon();
  const std::size_t n_sa = m.num_triplets();
  const auto sol = backward_induction(m);
  const double log_term = bonus_log_term(m, cfg.episodes, cfg.effective_delta());

  SimTrace trace;
  trace.seed = cfg.seed;
  trace.episodes = cfg.episodes;
  trace.delta = cfg.effective_delta();
  trace.visit_counts.assign(n_sa, 0);
  trace.expected_visits.assign(n_sa, 0.0);
  trace.episode_gaps.reserve(cfg.episodes);
  std::vector<double> reward_sums(n_sa, 0.0);
  std::vector<std::uint64_t> next_counts(n_sa * S, 0);

  SplitMix64 rng(cfg.seed);
  DeterministicPolicy pi(H, S, 0);
  std::optional<DeterministicPolicy> cached_pi;
  double cached_gap = 0.0;
  std::vector<double> cached_rho;
  std::vector<double> vbar((static_cast<std::size_t>(H) + 1) * S, 0.0);
  const auto vb = [&](int h, int s) -> double& { return vbar[static_cast<std::size_t>(h) * S + s]; };

  for (std::uint64_t k = 1; k <= cfg.episodes; ++k) {
    for (int h = H - 1; h >= 0; --h) {
      for (int s = 0; s < S; ++s) {
        double best = -std::numeric_limits<double>::infinity();
        int best_a = -1;
        for (int a = 0; a < A; ++a) {
          if (!m.available(h, s, a)) continue;
          const std::size_t i = m.sa_index(h, s, a);
          const std::uint64_t n = trace.visit_counts[i];
          double q = bonus(n, H, log_term);
          if (n == 0) {
            double mean_next = 0.0;
            for (int t = 0; t < S; ++t) mean_next += vb(h + 1, t);
            q += mean_next / S;
          } else {
            double next = 0.0;
            for (int t = 0; t < S; ++t) {
              next += static_cast<double>(next_counts[i * S + t]) * vb(h + 1, t);
            }
            q += (reward_sums[i] + next) / static_cast<double>(n);
          }
          if (q > best) {
            best = q;
            best_a = a;
          }
        }
        vb(h, s) = best;
        pi.set(h, s, best_a);
      }
    }

    double optimistic0 = 0.0;
    for (int s = 0; s < S; ++s) optimistic0 += m.initial()[s] * vb(0, s);
    if (optimistic0 < sol.v0star - kTieTolerance) ++trace.optimism_violations;

    if (!cached_pi || !(*cached_pi == pi)) {
      cached_gap = policy_gap(m, sol, pi);
      cached_rho = occupancy(m, pi).rho;
      cached_pi = pi;
    }
    trace.episode_gaps.push_back(cached_gap);
    trace.cumulative_regret += cached_gap;
    if (cached_gap > kTieTolerance) ++trace.suboptimal_episodes;
    for (std::size_t i = 0; i < n_sa; ++i) trace.expected_visits[i] += cached_rho[i];

    int s = rng.categorical(m.initial());
    for (int h = 0; h < H; ++h) {
      const int a = pi(h, s);
      const std::size_t i = m.sa_index(h, s, a);
      const double mean = m.reward_mean(h, s, a);
      double r = mean;
      if (!cfg.deterministic_rewards) {
        r = m.reward_family() == RewardFamily::kBernoulli ? (rng.bernoulli(mean) ? 1.0 : 0.0)
                                                          : rng.normal(mean);
      }
      const int next = rng.categorical(m.transition(h, s, a));
      ++trace.visit_counts[i];
      reward_sums[i] += r;
      ++next_counts[i * S + next];
      s = next;
    }

    if (k % cfg.record_every == 0 || k == cfg.episodes) {
      trace.series.push_back(
          {k, trace.cumulative_regret, trace.suboptimal_episodes, trace.optimism_violations});
    }
  }

  trace.reward_estimates.assign(n_sa, 0.0);
  for (std::size_t i = 0; i < n_sa; ++i) {
    if (trace.visit_counts[i] > 0) {
      trace.reward_estimates[i] = reward_sums[i] / static_cast<double>(trace.visit_counts[i]);
    }
  }
  return trace;
}

RegretIdentity regret_identity_check(const SimTrace& trace, const Mdp& m) {
  if (trace.expected_visits.size() != m.num_triplets()) {
    throw Error(ErrorCode::kDimensionMismatch, "trace does not belong to this MDP");
  }
  const auto sol = backward_induction(m);
  RegretIdentity out;
  for (double g : trace.episode_gaps) out.policy_side += g;
  for (std::size_t i = 0; i < sol.gaps.size(); ++i) {
    out.action_side += trace.expected_visits[i] * sol.gaps[i];
  }
  const double scale = std::max({std::abs(out.policy_side), std::abs(out.action_side), 1e-3});
  out.holds = std::abs(out.policy_side - out.action_side) <= 1e-6 * scale;
  return out;
}

LogFit log_regret_fit(std::span<const std::uint64_t> k, std::span<const double> regret,
                      std::uint64_t episodes) {
  if (k.size() != regret.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "episode and regret series differ in length");
  }
  const double lo = static_cast<double>(episodes) / 4.0;
  double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double kk = static_cast<double>(k[i]);
    if (kk < lo || k[i] > episodes) continue;
    const double x = std::log(kk), y = regret[i];
    n += 1.0;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  LogFit fit;
  fit.points = static_cast<std::size_t>(n);
  if (n < 2.0) throw Error(ErrorCode::kEmptyInput, "need at least two points in [K/4, K]");
  const double vx = sxx - sx * sx / n;
  const double vy = syy - sy * sy / n;
  const double cxy = sxy - sx * sy / n;
  if (vx <= 0.0) throw Error(ErrorCode::kInvalidInput, "all tail points share one episode index");
  fit.slope = cxy / vx;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.r2 = vy <= 1e-300 ? 1.0 : (cxy * cxy) / (vx * vy);
  return fit;
}

LogFit log_regret_fit(const SimTrace& trace) {
  std::vector<std::uint64_t> k;
  std::vector<double> y;
  for (const auto& p : trace.series) {
    k.push_back(p.k);
    y.push_back(p.cum_regret);
  }
  return log_regret_fit(k, y, trace.episodes);
}

double min_positive_policy_gap(const Mdp& m, std::uint64_t max_count) {
  const auto sol = backward_induction(m);
  PolicyEnumerator it(m, max_count);
  DeterministicPolicy pi(m.horizon(), m.num_states(), 0);
  double best = std::numeric_limits<double>::infinity();
  while (it.next(pi)) {
    const double g = policy_value(m, pi).value0;
    const double gap = sol.v0star - g;
    if (gap > kTieTolerance) best = std::min(best, gap);
  }
  if (!std::isfinite(best)) throw Error(ErrorCode::kDegenerateGaps, "every policy is optimal");
  return best;
}

double expected_regret_bound(const Mdp& m, std::uint64_t episodes, double gamma_min) {
  const double S = m.num_states(), A = m.num_actions(), H = m.horizon();
  const double K = static_cast<double>(episodes);
  const double sa = S * A, h4 = std::pow(H, 4);
  const double log_l = std::log(4.0 * sa * H * K * K);
  return 4.0 * h4 * sa / gamma_min * log_l + 2.0 * h4 * std::pow(sa, 1.5) / gamma_min * std::sqrt(log_l) +
         sa * H * H + 2.0 * H;
}

}  // namespace regret_frontier
