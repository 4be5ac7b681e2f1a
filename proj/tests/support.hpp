#pragma once

// Seeded samplers and independent oracles shared by the test binaries.

#include <functional>
#include <map>
#include <random>
#include <vector>

#include "takagi/rational.hpp"

namespace takagi::testing {

/// `count` rationals p/q in [0,1] with 1 <= q <= max_den, reproducible.
inline std::vector<Rational> seeded_rationals(std::size_t count, std::uint64_t seed, long max_den = 1000) {
  std::mt19937_64 gen(seed);
  std::vector<Rational> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const long q = std::uniform_int_distribution<long>(1, max_den)(gen);
    const long p = std::uniform_int_distribution<long>(0, q)(gen);
    Rational x(p, q);
    x.canonicalize();
    out.push_back(x);
  }
  return out;
}

inline Rational frac_part(const Rational& y) { return y - Rational(mpz_class(y.get_num() / y.get_den())); }

/// sum_{k>=0} r^-k w(y_k) with y_0 = x and y_k = frac(r^k x) for k >= 1.
/// Orbit states are stored in a map until one repeats; the cycle is closed
/// with a geometric series.
inline Rational orbit_series(const Rational& x, long r, const std::function<Rational(const Rational&)>& w) {
  const Rational inv_r(1, r);
  std::map<Rational, std::size_t> seen;
  std::vector<Rational> orbit;  // y_1, y_2, ...
  Rational y = frac_part(x * r);
  while (seen.emplace(y, orbit.size()).second) {
    orbit.push_back(y);
    y = frac_part(y * r);
  }
  const std::size_t start = seen[y];
  Rational acc = w(x), scale = inv_r;
  for (std::size_t j = 0; j < start; ++j) {
    acc += scale * w(orbit[j]);
    scale *= inv_r;
  }
  Rational cycle = 0, t = 1;
  for (std::size_t j = start; j < orbit.size(); ++j) {
    cycle += t * w(orbit[j]);
    t *= inv_r;
  }
  return acc + scale * cycle / (1 - t);
}

inline Rational dist_to_integer(const Rational& y) {
  const Rational f = frac_part(y);
  return f < 1 - f ? f : 1 - f;
}

inline Rational dist_to_half(const Rational& y) {
  const Rational d = frac_part(y) - Rational(1, 2);
  return d < 0 ? Rational(-d) : d;
}

/// Orbit oracle for f_r.
inline Rational takagi_oracle(const Rational& x, long r) { return orbit_series(x, r, dist_to_integer); }

/// Orbit oracle for sum_n dist(x, midpoints of D_n).
inline Rational dtilde_oracle(const Rational& x, long r) { return orbit_series(x, r, dist_to_half); }

}  // namespace takagi::testing
