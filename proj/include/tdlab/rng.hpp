#pragma once

#include <cmath>
#include <cstdint>

namespace tdlab {

// Counter-based 64-bit generator (splitmix64). Every random draw in the
// project goes through this generator so that runs replay bit-for-bit on
// any platform; the mixing function below is part of the on-disk
// reproducibility contract and must not change.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, bound) via the multiply-shift reduction.
  std::uint64_t uniform_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  int uniform_int(int bound) {
    return static_cast<int>(uniform_below(static_cast<std::uint64_t>(bound)));
  }

  /// Standard normal draw, Box-Muller on two fresh uniforms.
  double gaussian() {
    double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

/// Per-run stream seed: first splitmix64 output of the master seed, xored
/// with the run seed. The run's generator is SplitMix64(derive_stream_seed).
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                        std::uint64_t run_seed) {
  return SplitMix64(master_seed).next() ^ run_seed;
}

}  // namespace tdlab
