#pragma once

// Deterministic random streams. All distribution transforms are implemented
// here (not via std::*_distribution) so that a given seed produces the same
// byte-identical sample sequence on every standard-conforming platform.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace edgegate {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Folds an arbitrary list of integers into one well-mixed 64-bit seed.
// Used to derive independent sub-streams, e.g. (seed, stream, step, edge).
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x2545f4914f6cdd1dULL;
  for (std::uint64_t p : parts) h = splitmix64(h ^ p);
  return h;
}

struct Dist {
  double mean = 0.0;
  double stddev = 0.0;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n >= 1. Rejection sampling keeps it unbiased.
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t rem = (0ULL - n) % n;  // 2^64 mod n
    std::uint64_t x = eng_();
    while (rem != 0 && x > ~rem) x = eng_();
    return x % n;
  }

  // Standard normal via Box-Muller (cosine branch only; two engine draws).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }
  double normal(const Dist& d) { return normal(d.mean, d.stddev); }

  // Normal truncated at zero (negative draws clamp to 0).
  double nonneg_normal(const Dist& d) { return std::max(0.0, normal(d)); }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace edgegate
