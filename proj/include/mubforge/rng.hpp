#pragma once

#include <cstdint>

namespace mubforge {

// Deterministic generator used for the random seed matrix in the averaging
// step.  The exact recurrence is part of the reproducibility contract, so it
// is spelled out here rather than delegated to std::mt19937_64 (whose
// distributions are not bit-stable across standard libraries).
//
// State initialisation: one splitmix64 step applied to the user seed.
// Stream: xorshift64* (shifts 12/25/27, multiplier 2685821657736338717).
// Doubles take the top 53 bits of the 64-bit output.
class Xorshift64Star {
public:
  explicit Xorshift64Star(std::uint64_t seed) : state_(splitmix64(seed)) {
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ull;
  }

  std::uint64_t next_u64() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1Dull;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

}  // namespace mubforge
