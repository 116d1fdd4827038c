#pragma once

// SplitMix64: every random draw in the pipeline goes through this generator
// so outputs are reproducible bit-for-bit in any language.

#include <cstdint>

namespace moodfilm {

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Independent stream `stream` of the base seed.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64_mix(base ^ splitmix64_mix(stream + 0x9E3779B97F4A7C15ULL));
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state_);
  }

  // Uniform in [0, 1) with 53 bits.
  constexpr double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Uniform integer in [0, n).
  constexpr std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

// Stream identifiers for derive_seed.
enum class SeedStream : std::uint64_t {
  Terrain = 1,
  Detour = 2,
  Camera = 3,
  Placement = 4,
};

// Base seed for one chapter's world; streams above are derived from it.
constexpr std::uint64_t chapter_base_seed(std::uint64_t seed, int chapter) {
  return derive_seed(seed, 100 + static_cast<std::uint64_t>(chapter));
}

}  // namespace moodfilm
