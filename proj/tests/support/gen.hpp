#pragma once

// Small seeded generators for property tests. Each property runs a fixed
// number of cases from a fixed seed, so failures reproduce exactly; the case
// index is reported through doctest's INFO.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "orlicz/space.hpp"

namespace gen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  std::uint64_t bits() { return rng_(); }

  /// Nonzero scalar with magnitude in [0.01, 100].
  double scalar() { return (coin() ? 1.0 : -1.0) * log_uniform(0.01, 100.0); }

  orlicz::space::Interval subinterval(double lo, double hi, double min_length) {
    const double len = uniform(min_length, hi - lo);
    const double a = uniform(lo, hi - len);
    return {a, a + len};
  }

  /// One of: indicator, f_half squeezed into a subinterval, a power tail
  /// with exponent in (4, 8), or a scaled copy of one of these. All live on
  /// the unit interval and are in every Lp with p <= 4.
  orlicz::space::RealFunction function() {
    namespace sp = orlicz::space;
    switch (integer(0, 3)) {
      case 0:
        return sp::indicator(subinterval(0.0, 1.0, 0.01));
      case 1: {
        const auto span = subinterval(0.0, 1.0, 0.01);
        return sp::scale_translate(sp::f_half(), log_uniform(0.1, 10.0), span.lo, span.length());
      }
      case 2:
        return sp::power_tail(uniform(4.5, 8.0), log_uniform(0.1, 10.0));
      default:
        return sp::scaled(sp::f_half(), scalar());
    }
  }

 private:
  std::mt19937_64 rng_;
};

/// Runs `property(gen)` for `cases` cases.
template <class Property>
void for_all(std::uint64_t seed, int cases, Property&& property) {
  Gen g(seed);
  for (int i = 0; i < cases; ++i) {
    INFO("property case " << i << " seed " << seed);
    property(g);
  }
}

}  // namespace gen
