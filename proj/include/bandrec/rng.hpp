#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bandrec {

/// SplitMix64 finalizer; used to derive independent engine seeds from a user seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seeded 64-bit generator with platform-independent output.
///
/// The engine is std::mt19937_64 seeded through SplitMix64. Uniform and normal
/// variates are produced here rather than by the <random> distributions, whose
/// algorithms are implementation-defined, so a seed reproduces the same stream
/// with any standard library. `split(stream)` yields a statistically independent
/// child generator without touching the parent state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (one variate per call, no cached state).
  double normal();

  Rng split(std::uint64_t stream) const {
    return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x632BE59BD9B4E019ULL)));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

inline double Rng::normal() {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

}  // namespace bandrec
