#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "conjlen/linalg.hpp"

namespace conjlen::testing {

// CONJLEN_SEED overrides the fixed default.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("CONJLEN_SEED")) return std::stoull(s);
  return 20240611;
}

inline long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

inline IntVector random_vector(std::mt19937_64& rng, std::size_t n, long bound) {
  IntVector v(n);
  for (auto& x : v) x = uniform(rng, -bound, bound);
  return v;
}

// Product of random elementary matrices: det +-1, small entries.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps, long bound = 20) {
  for (;;) {
    IntMatrix m = IntMatrix::identity(n);
    for (int s = 0; s < steps; ++s) {
      const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
      const auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
      if (n > 1 && i == j) continue;
      IntMatrix e = IntMatrix::identity(n);
      if (n == 1)
        e(0, 0) = -1;
      else
        e(i, j) = uniform(rng, -2, 2);
      m = uniform(rng, 0, 1) ? m * e : e * m;
    }
    if (uniform(rng, 0, 1) && n > 0) {
      for (std::size_t j = 0; j < n; ++j) m(0, j) = -m(0, j);
    }
    bool ok = true;
    for (const auto& x : m.entries()) ok = ok && abs(x) <= bound;
    if (ok) return m;
  }
}

}  // namespace conjlen::testing
