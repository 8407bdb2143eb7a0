#pragma once

#include <cstdint>
#include <random>

namespace invpso {

/// Seeded 64-bit Mersenne Twister with portable real/integer draws.
/// std::uniform_*_distribution output differs between standard libraries, so
/// draws are derived from the raw engine output directly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi].
  double uniform(double lo, double hi) {
    const double u = unit();
    const double x = lo + (hi - lo) * u;
    return x > hi ? hi : x;
  }

  /// Uniform integer in [lo, hi] (rejection sampling, no modulo bias).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == UINT64_MAX) return static_cast<std::int64_t>(engine_());
    const std::uint64_t range = span + 1;
    // 2^64 mod range; draws below it would over-weight the low residues.
    const std::uint64_t threshold = (0 - range) % range;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw < threshold);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + draw % range);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace invpso
