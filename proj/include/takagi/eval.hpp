#pragma once

// Evaluation of f_r(x) = sum_{n>=0} r^-n phi(r^n x) = sum_{n>=1} g_n(x),
// where phi is the distance to the nearest integer and g_n the distance
// to D_n = { k / r^(n-1) } in [0,1].

#include <cstdint>

#include "takagi/digits.hpp"
#include "takagi/rational.hpp"

namespace takagi {

struct Enclosure {
  Rational lo;
  Rational hi;

  static Enclosure exact(const Rational& v) { return {v, v}; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  Rational width() const { return hi - lo; }
  bool is_exact() const { return lo == hi; }
};

inline constexpr std::uint64_t kDefaultMaxStates = 1'000'000;
inline constexpr std::uint64_t kDefaultLookaheadCap = 10'000;

Rational phi_dist(const Rational& x);

/// dist(x, D_n) = r^-(n-1) phi(r^(n-1) x); n >= 1.
Rational g_n(const Rational& x, Index n, Radix radix);

/// Exact f_r(x) for rational x in [0,1]. The orbit of r^k x mod 1 is split
/// into preperiod and cycle; the cycle contributes a closed-form geometric
/// sum. Throws CapExceeded when preperiod + cycle exceeds `max_states`.
Rational eval_exact(const Rational& x, Radix radix, std::uint64_t max_states = kDefaultMaxStates);

/// r^(1-N) / (2(r-1)).
///
/// Since g_n <= r^-(n-1)/2, the tail sum_{n>N} g_n is at most
/// (1/2) r^-N / (1 - 1/r) = r^(1-N) / (2(r-1)).
Rational tail_bound(Radix radix, Index N);

/// [S_N - t, S_N + t] with S_N = sum_{n<=N} g_n(x) and t = tail_bound(N).
Enclosure eval_partial(const Rational& x, Radix radix, Index N);

/// Rational streams delegate to the rational overload. For generator
/// streams S_N is taken at the truncation x_M (M = N + 2 + ceil(log_r N)),
/// widened by the Lipschitz error N r^-M.
Enclosure eval_partial(const DigitStream& s, Index N);

/// sum_n dist(x, D~_n), via g~_n = r^-(n-1)/2 - g_n: r/(2(r-1)) - f_r(x).
Rational dtilde_series(const Rational& x, Radix radix);

/// Exact x for rational streams. For generators, x_M plus the range of
/// tails made of the stream's two digit values.
Enclosure point_enclosure(const DigitStream& s, Index M);

/// Smallest y in D_n u D~_n with y > x. Rational streams use exact
/// arithmetic; generator streams compare the tail with 1/2 digit-wise, which
/// for odd r needs the next non-middle digit (at most `lookahead_cap` ahead).
/// Throws DomainError at x = 1.
Rational next_grid_point(const DigitStream& s, Index n, std::uint64_t lookahead_cap = kDefaultLookaheadCap);

/// Largest y in D_n with y < x. Throws DomainError at x = 0.
Rational prev_grid_point(const DigitStream& s, Index n);

/// d_n = min{ y - x : y in D_n u D~_n, y > x } for a generic rational stream.
/// Throws DomainError for points of D u D~ and for generator streams (whose
/// d_n is irrational; see d_n_enclosure).
Rational d_n(const DigitStream& s, Index n);

/// d_n for any generic stream; exact for rational streams, otherwise
/// enclosed using the first `digits` digits.
Enclosure d_n_enclosure(const DigitStream& s, Index n, Index digits,
                        std::uint64_t lookahead_cap = kDefaultLookaheadCap);

}  // namespace takagi
