#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regret_frontier/kl.hpp"
#include "regret_frontier/mdp.hpp"

namespace regret_frontier {

/// Visitation allocation eta_h(s, a). Entries flagged `unbounded` stand for
/// +inf (optimal actions that cost nothing to visit); their slot in `eta`
/// holds 0 and never enters arithmetic.
struct AllocationEta {
  int num_states = 0;
  int num_actions = 0;
  int horizon = 0;
  std::vector<double> eta;
  std::vector<std::uint8_t> unbounded;
  double alpha = 0.0;
  double value = 0.0;  // sum of eta * gap over finite entries
  double dynamics_residual = 0.0;
  bool satisfies_dynamics = false;

  bool any_unbounded() const;
};

/// Largest violation of the flow constraints
///   sum_a eta_h(s, a) = sum_{s', a'} p_{h-1}(s | s', a') eta_{h-1}(s', a'),  h > 0
///   sum_a eta_0(s, a) = 0 for s outside supp(p_0).
/// +inf when any entry is unbounded.
double dynamics_residual(const Mdp& m, const AllocationEta& alloc);

enum class BoundKind {
  kFullSupport,
  kPinskerUpper,
  kNoDynamicsDecoupled,
  kSemiBanditExact,
  kTreeClosedForm,
};

const char* bound_kind_name(BoundKind kind);

struct TripletContribution {
  int h = 0;
  int s = 0;
  int a = 0;
  double gap = 0.0;
  double complexity = 0.0;    // K_{s,a,h}, or the Pinsker surrogate
  double contribution = 0.0;  // gap / K, or 2 (H - h)^2 / gap
};

struct BoundReport {
  BoundKind kind = BoundKind::kFullSupport;
  double value = 0.0;
  std::optional<AllocationEta> allocation;
  std::vector<TripletContribution> per_triplet;
  std::map<std::string, double> extras;
};

/// Throws kInvalidInput unless alpha is in [0, 1). alpha = 0 stands for the
/// (1 - alpha) = 1 limit.
void validate_alpha(double alpha);

/// (1 - alpha) * sum over sub-optimal triplets of gap / K_{s,a,h}, valid when
/// the return-optimal policies share one state occupancy that is positive
/// everywhere. Throws kAssumptionViolated, kNotFullSupport, kDegenerateGaps.
BoundReport full_support_bound(const Mdp& m, double alpha);

enum class PinskerFactor {
  kAsPrinted,        // 2 (H - h)^2 / gap with 1-based h: zero at the last stage
  kRemainingStages,  // 2 (H - h + 1)^2 / gap: reward plus H - h future stages
};

/// sum over sub-optimal triplets of 2 c_h^2 / gap. No (1 - alpha) factor.
/// Throws kDegenerateGaps.
BoundReport pinsker_upper_bound(const Mdp& m,
                                PinskerFactor factor = PinskerFactor::kAsPrinted);

enum class NoDynamicsMode {
  kGeneral,         // every sub-optimal triplet, joint reward/transition K
  kKnownDynamics,   // sub-optimal triplets on the optimal state support,
                    // reward-only K
};

/// Decoupled bound without the dynamics constraint:
/// (1 - alpha) * sum gap / K over the triplets selected by `mode`.
BoundReport no_dynamics_bound(const Mdp& m, double alpha,
                              NoDynamicsMode mode = NoDynamicsMode::kGeneral);

/// Dispatch for the general lower bound: returns the full-support closed form
/// when it applies and throws kUnsupported otherwise, naming the regimes that
/// are computable.
BoundReport theorem_lower_bound(const Mdp& m, double alpha);

}  // namespace regret_frontier
