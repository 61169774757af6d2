#pragma once

#include <cstdint>

namespace lyapna {

// SplitMix64 (Steele, Lea & Flood; the java.util.SplittableRandom finalizer).
// This is the single PRNG used everywhere: 64-bit seeds, 64-bit outputs,
// identical sequences on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) by rejection; exact for any bound >= 1.
  uint64_t next_below(uint64_t bound) {
    uint64_t limit = bound * (~0ULL / bound);
    for (;;) {
      uint64_t u = next();
      if (u < limit) return u % bound;
    }
  }

 private:
  uint64_t state_;
};

// Independent stream for one sample index: sampling is reproducible per
// (seed, index) regardless of how samples are scheduled across threads.
inline SplitMix64 stream_for(uint64_t seed, uint64_t index) {
  SplitMix64 mix(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
  return SplitMix64(mix.next());
}

}  // namespace lyapna
