#ifndef SSHQT_RNG_HPP
#define SSHQT_RNG_HPP

#include <cmath>
#include <cstdint>

namespace sshqt {

/// SplitMix64: seedable 64-bit generator with a documented finalizer, used
/// for all stochastic sampling so that ensembles are reproducible bit-for-bit
/// across platforms and worker counts.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Standard normal via Box-Muller (one fresh pair of uniforms per call, no
/// cached second value, so the draw sequence is a pure function of the seed).
inline double gaussian(SplitMix64& rng) {
  double u1 = 1.0 - rng.next_double();  // (0, 1]
  double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

/// Per-realization seed derivation: realization i of a run with master seed m
/// uses mix_seed(m, i).  SplitMix64 finalizer over m + golden*(i+1); fixed
/// forever so recorded seeds stay replayable.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace sshqt

#endif
