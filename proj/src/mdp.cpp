#include "regret_frontier/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "regret_frontier/error.hpp"

namespace regret_frontier {
namespace {

constexpr double kRowSumTolerance = 1e-12;

void check_distribution(std::span<const double> p, const std::string& what) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidMdp, what + " has a negative or non-finite entry");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > kRowSumTolerance) {
    throw Error(ErrorCode::kInvalidMdp, what + " does not sum to 1");
  }
}

}  // namespace

Mdp::Mdp(int num_states, int num_actions, int horizon,
         std::vector<double> transitions, RewardFamily family,
         std::vector<double> reward_means, std::vector<double> initial,
         std::vector<std::uint8_t> available)
    : num_states_(num_states),
      num_actions_(num_actions),
      horizon_(horizon),
      transitions_(std::move(transitions)),
      family_(family),
      reward_means_(std::move(reward_means)),
      initial_(std::move(initial)),
      available_(std::move(available)) {
  if (num_states_ < 1 || num_actions_ < 1 || horizon_ < 1) {
    throw Error(ErrorCode::kInvalidMdp, "S, A and H must all be at least 1");
  }
  const std::size_t n = num_triplets();
  if (transitions_.size() != n * num_states_ || reward_means_.size() != n ||
      initial_.size() != static_cast<std::size_t>(num_states_)) {
    throw Error(ErrorCode::kDimensionMismatch, "tensor shapes do not match S, A, H");
  }
  if (!available_.empty() && available_.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "availability mask must be H x S x A");
  }
  if (!available_.empty() &&
      std::all_of(available_.begin(), available_.end(), [](auto x) { return x != 0; })) {
    available_.clear();
  }
  for (int h = 0; h < horizon_; ++h) {
    for (int s = 0; s < num_states_; ++s) {
      if (num_available(h, s) == 0) {
        throw Error(ErrorCode::kInvalidMdp, "every (h, s) needs an available action");
      }
      for (int a = 0; a < num_actions_; ++a) {
        check_distribution(transition(h, s, a), "transition row");
        const double r = reward_mean(h, s, a);
        if (!std::isfinite(r)) {
          throw Error(ErrorCode::kInvalidMdp, "reward mean is not finite");
        }
        if (family_ == RewardFamily::kBernoulli && (r < 0.0 || r > 1.0)) {
          throw Error(ErrorCode::kInvalidMdp, "Bernoulli reward mean outside [0, 1]");
        }
      }
    }
  }
  check_distribution(initial_, "initial distribution");
}

int Mdp::num_available(int h, int s) const {
  if (available_.empty()) return num_actions_;
  int count = 0;
  for (int a = 0; a < num_actions_; ++a) count += available(h, s, a) ? 1 : 0;
  return count;
}

Mdp Mdp::with_reward_means(std::vector<double> reward_means) const {
  return Mdp(num_states_, num_actions_, horizon_, transitions_, family_,
             std::move(reward_means), initial_, available_);
}

void validate_policy(const Mdp& m, const DeterministicPolicy& pi) {
  if (pi.horizon() != m.horizon() || pi.num_states() != m.num_states()) {
    throw Error(ErrorCode::kInvalidInput, "policy shape does not match the MDP");
  }
  for (int h = 0; h < m.horizon(); ++h) {
    for (int s = 0; s < m.num_states(); ++s) {
      const int a = pi(h, s);
      if (a < 0 || a >= m.num_actions() || !m.available(h, s, a)) {
        throw Error(ErrorCode::kInvalidInput, "policy takes an invalid action");
      }
    }
  }
}

bool OptimalSolution::is_optimal(int h, int s, int a) const {
  const auto& opt = optimal_actions(h, s);
  return std::binary_search(opt.begin(), opt.end(), a);
}

OptimalSolution backward_induction(const Mdp& m) {
  const int S = m.num_states(), A = m.num_actions(), H = m.horizon();
  OptimalSolution sol;
  sol.num_states = S;
  sol.num_actions = A;
  sol.horizon = H;
  sol.qstar.assign(m.num_triplets(), 0.0);
  sol.gaps.assign(m.num_triplets(), 0.0);
  sol.vstar.assign(static_cast<std::size_t>(H + 1) * S, 0.0);
  sol.opt_actions.resize(static_cast<std::size_t>(H) * S);

  for (int h = H - 1; h >= 0; --h) {
    const double* next = sol.vstar.data() + static_cast<std::size_t>(h + 1) * S;
    for (int s = 0; s < S; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < A; ++a) {
        const auto row = m.transition(h, s, a);
        double q = m.reward_mean(h, s, a);
        for (int t = 0; t < S; ++t) q += row[t] * next[t];
        sol.qstar[m.sa_index(h, s, a)] = q;
        if (m.available(h, s, a)) best = std::max(best, q);
      }
      sol.vstar[static_cast<std::size_t>(h) * S + s] = best;
      auto& opt = sol.opt_actions[static_cast<std::size_t>(h) * S + s];
      for (int a = 0; a < A; ++a) {
        if (!m.available(h, s, a)) continue;
        const double gap = best - sol.qstar[m.sa_index(h, s, a)];
        sol.gaps[m.sa_index(h, s, a)] = gap;
        if (gap <= kTieTolerance) opt.push_back(a);
      }
    }
  }

  sol.v0star = 0.0;
  for (int s = 0; s < S; ++s) sol.v0star += m.initial()[s] * sol.vstar[s];

  sol.delta_min = std::numeric_limits<double>::infinity();
  sol.delta_max = 0.0;
  sol.zmul = 0;
  for (int h = 0; h < H; ++h) {
    for (int s = 0; s < S; ++s) {
      const auto& opt = sol.optimal_actions(h, s);
      if (opt.size() >= 2) sol.zmul += static_cast<int>(opt.size());
      for (int a = 0; a < A; ++a) {
        if (!m.available(h, s, a) || sol.is_optimal(h, s, a)) continue;
        const double gap = sol.gap(h, s, a);
        sol.delta_min = std::min(sol.delta_min, gap);
        sol.delta_max = std::max(sol.delta_max, gap);
      }
    }
  }
  sol.degenerate = std::isinf(sol.delta_min);
  return sol;
}

PolicyValue policy_value(const Mdp& m, const DeterministicPolicy& pi) {
  validate_policy(m, pi);
  const int S = m.num_states(), H = m.horizon();
  PolicyValue out;
  out.values.assign(static_cast<std::size_t>(H + 1) * S, 0.0);
  for (int h = H - 1; h >= 0; --h) {
    const double* next = out.values.data() + static_cast<std::size_t>(h + 1) * S;
    for (int s = 0; s < S; ++s) {
      const int a = pi(h, s);
      const auto row = m.transition(h, s, a);
      double v = m.reward_mean(h, s, a);
      for (int t = 0; t < S; ++t) v += row[t] * next[t];
      out.values[static_cast<std::size_t>(h) * S + s] = v;
    }
  }
  for (int s = 0; s < S; ++s) out.value0 += m.initial()[s] * out.values[s];
  return out;
}

OccupancyTensor occupancy(const Mdp& m, const DeterministicPolicy& pi) {
  validate_policy(m, pi);
  const int S = m.num_states(), A = m.num_actions(), H = m.horizon();
  OccupancyTensor occ;
  occ.num_states = S;
  occ.num_actions = A;
  occ.horizon = H;
  occ.rho.assign(m.num_triplets(), 0.0);
  occ.rho_state.assign(static_cast<std::size_t>(H) * S, 0.0);
  std::copy(m.initial().begin(), m.initial().end(), occ.rho_state.begin());
  for (int h = 0; h < H; ++h) {
    for (int s = 0; s < S; ++s) {
      const double mass = occ.rho_state[static_cast<std::size_t>(h) * S + s];
      const int a = pi(h, s);
      occ.rho[m.sa_index(h, s, a)] = mass;
      if (h + 1 == H || mass == 0.0) continue;
      const auto row = m.transition(h, s, a);
      double* next = occ.rho_state.data() + static_cast<std::size_t>(h + 1) * S;
      for (int t = 0; t < S; ++t) next[t] += mass * row[t];
    }
  }
  return occ;
}

double policy_gap(const Mdp& m, const OptimalSolution& sol,
                  const DeterministicPolicy& pi) {
  const double direct = sol.v0star - policy_value(m, pi).value0;
  const auto occ = occupancy(m, pi);
  double weighted = 0.0;
  for (std::size_t i = 0; i < occ.rho.size(); ++i) weighted += occ.rho[i] * sol.gaps[i];
  if (std::abs(direct - weighted) > 1e-9) {
    throw Error(ErrorCode::kNumericalFailure,
                "policy gap disagrees with the occupancy-weighted action gaps");
  }
  return direct;
}

std::optional<std::uint64_t> count_policies(const Mdp& m) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 63;
  std::uint64_t total = 1;
  for (int h = 0; h < m.horizon(); ++h) {
    for (int s = 0; s < m.num_states(); ++s) {
      const auto k = static_cast<std::uint64_t>(m.num_available(h, s));
      if (total > kLimit / k) return std::nullopt;
      total *= k;
    }
  }
  return total;
}

PolicyEnumerator::PolicyEnumerator(const Mdp& m, std::uint64_t max_count)
    : horizon_(m.horizon()), num_states_(m.num_states()) {
  const auto count = count_policies(m);
  if (!count || *count > max_count) {
    throw Error(ErrorCode::kCapacityExceeded,
                "policy count exceeds the enumeration cap of " + std::to_string(max_count));
  }
  total_ = *count;
  choices_.resize(static_cast<std::size_t>(horizon_) * num_states_);
  for (int h = 0; h < horizon_; ++h) {
    for (int s = 0; s < num_states_; ++s) {
      auto& c = choices_[static_cast<std::size_t>(h) * num_states_ + s];
      for (int a = 0; a < m.num_actions(); ++a) {
        if (m.available(h, s, a)) c.push_back(a);
      }
    }
  }
  cursor_.assign(choices_.size(), 0);
}

bool PolicyEnumerator::next(DeterministicPolicy& out) {
  if (done_) return false;
  if (started_) {
    // Odometer increment, least significant digit last.
    std::size_t i = cursor_.size();
    while (i > 0) {
      --i;
      if (++cursor_[i] < choices_[i].size()) break;
      cursor_[i] = 0;
      if (i == 0) {
        done_ = true;
        return false;
      }
    }
  }
  started_ = true;
  out = DeterministicPolicy(horizon_, num_states_);
  for (std::size_t i = 0; i < cursor_.size(); ++i) out.table()[i] = choices_[i][cursor_[i]];
  return true;
}

std::vector<DeterministicPolicy> enumerate_policies(const Mdp& m,
                                                    std::uint64_t max_count) {
  PolicyEnumerator it(m, max_count);
  std::vector<DeterministicPolicy> out;
  out.reserve(it.size());
  DeterministicPolicy pi;
  while (it.next(pi)) out.push_back(pi);
  return out;
}

}  // namespace regret_frontier
