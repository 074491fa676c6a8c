#pragma once

#include <cstdint>

#include "liepoisson/rational.hpp"

namespace liepoisson {

// Deterministic 64-bit generator (splitmix64 step), reproducible across
// platforms; all randomized tests and point sampling run through this.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi] inclusive.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  // Small exact rational n/d with n in [-9, 9] and d in [1, 9].
  Rational next_rational() {
    std::int64_t n = next_int(-9, 9);
    std::int64_t d = next_int(1, 9);
    return Rational(n, d);
  }

  // Same distribution restricted to nonzero values.
  Rational next_nonzero_rational() {
    while (true) {
      Rational r = next_rational();
      if (r != 0) return r;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace liepoisson
