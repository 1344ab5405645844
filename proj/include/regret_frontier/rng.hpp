#pragma once

#include <cstdint>
#include <span>

namespace regret_frontier {

/// SplitMix64 generator.
///
/// Every random quantity in the library is derived from this stream so that
/// generated instances are identical across platforms and implementations:
///
///   state  += 0x9E3779B97F4A7C15
///   z       = state
///   z       = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z       = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   output  = z ^ (z >> 31)
///
/// Derived draws:
///   uniform()     = (next() >> 11) * 2^-53, in [0, 1)
///   exponential() = -log(1 - uniform())
///   normal()      = Marsaglia polar method on 2*uniform()-1 pairs; the second
///                   variate of each accepted pair is cached and returned by
///                   the following call.
///   categorical() = smallest index i with u < cumsum(p)[i], u = uniform();
///                   falls back to the last index with positive mass.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kMix1 = 0xBF58476D1CE4E5B9ULL;
  static constexpr std::uint64_t kMix2 = 0x94D049BB133111EBULL;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform();
  double exponential();
  double normal();
  double normal(double mean) { return mean + normal(); }
  bool bernoulli(double p) { return uniform() < p; }
  int categorical(std::span<const double> probs);

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace regret_frontier
