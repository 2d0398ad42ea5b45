#pragma once

// Deterministic random-number layer.  The generator (xoshiro256** seeded
// through splitmix64) and all samplers are hand-rolled so that a given seed
// produces identical streams on every platform and standard-library
// implementation; replica streams are derived from (seed, replica index).

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "spinwalk/rational.hpp"

namespace spinwalk {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t sm = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    for (auto& word : s_) word = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in [0,1) with 53 random bits
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform integer in [0, bound) by rejection on the top words
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound 0");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  // uniform arbitrary-precision integer in [0, bound), exact, by drawing
  // just enough 64-bit words and rejecting overshoots
  Int below(const Int& bound) {
    if (bound <= 0) throw std::invalid_argument("Rng::below: bound <= 0");
    const size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    const size_t words = (bits + 63) / 64;
    const unsigned top_shift = static_cast<unsigned>(64 * words - bits);
    while (true) {
      Int x = 0;
      for (size_t w = 0; w < words; ++w) {
        std::uint64_t r = next_u64();
        if (w == 0) r >>= top_shift;  // keep exactly `bits` random bits total
        x <<= 64;
        x += static_cast<unsigned long>(r);
      }
      if (x < bound) return x;
    }
  }

  // exponential with mean m
  double exponential(double m) { return -m * std::log1p(-uniform()); }

  // gamma(shape alpha > 0, scale theta) by Marsaglia-Tsang squeeze (with the
  // standard alpha < 1 boost)
  double gamma(double alpha, double theta) {
    if (alpha < 1.0) {
      const double u = uniform();
      return gamma(alpha + 1.0, theta) * std::pow(u, 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * theta;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * theta;
    }
  }

  // standard normal via Marsaglia polar method
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace spinwalk
