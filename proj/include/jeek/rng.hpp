#pragma once

#include <cmath>
#include <cstdint>

namespace jeek {

// SplitMix64 (Steele, Lea, Flood 2014). Counter-based: the i-th output is
// mix64(seed + (i+1)*0x9E3779B97F4A7C15), so a stream is a pure function of
// (seed, draw index). Used for every synthetic dataset so runs are
// reproducible byte-for-byte; the exact draw order per generator is
// documented in the README.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53 random bits
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform integer in [0, n)
  std::uint64_t next_below(std::uint64_t n) {
    std::uint64_t r = static_cast<std::uint64_t>(next_double() * static_cast<double>(n));
    return r < n ? r : n - 1;
  }

  // standard normal via Box-Muller; consumes exactly two uniforms per call
  double next_gaussian() {
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace jeek
