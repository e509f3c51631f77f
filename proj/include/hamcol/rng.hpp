#pragma once

#include <cstdint>

// Deterministic 64-bit random number generation.
//
// Every random decision in this library flows through SplitMix64 so that a
// (seed, call sequence) pair replays bit-identically on any platform and can
// be re-implemented in another language from this comment alone:
//
//   state' = state + 0x9E3779B97F4A7C15            (wrapping)
//   output = mix64(state')  where
//   mix64(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//             z ^= z >> 27; z *= 0x94D049BB133111EB;
//             z ^= z >> 31; return z
//
// Bounded draws use rejection sampling (see uniform_below) so they are exactly
// uniform, and sub-streams are derived with derive_seed, never by reusing a
// parent stream. std::uniform_int_distribution is deliberately avoided: its
// output is implementation-defined and would break cross-toolchain replays.

namespace hamcol {

constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer. Full-avalanche bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// Derives an independent stream seed, e.g. per trial index or pipeline stage:
//   seed_k = mix64(seed ^ ((k + 1) * 0x9E3779B97F4A7C15)).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) noexcept {
  return mix64(seed ^ ((k + 1) * kGolden64));
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGolden64;
    return mix64(state_);
  }

  // Uniform draw in [0, bound). Rejects the top partial block:
  //   threshold = 2^64 mod bound; retry while next() < threshold.
  constexpr std::uint64_t uniform_below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t u = next();
      if (u >= threshold) return u % bound;
    }
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace hamcol
