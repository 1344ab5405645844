#include "regret_frontier/rng.hpp"

#include <cmath>

#include "regret_frontier/error.hpp"

namespace regret_frontier {

std::uint64_t SplitMix64::next() {
  state_ += kGamma;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * kMix1;
  z = (z ^ (z >> 27)) * kMix2;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::exponential() { return -std::log1p(-uniform()); }

double SplitMix64::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0, v = 0.0, s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

int SplitMix64::categorical(std::span<const double> probs) {
  if (probs.empty()) {
    throw Error(ErrorCode::kInvalidInput, "categorical over an empty support");
  }
  const double u = uniform();
  double cumulative = 0.0;
  int last_positive = -1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = static_cast<int>(i);
    cumulative += probs[i];
    if (u < cumulative) return static_cast<int>(i);
  }
  // Rounding left u above the total mass.
  return last_positive < 0 ? 0 : last_positive;
}

}  // namespace regret_frontier
