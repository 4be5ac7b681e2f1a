#pragma once

// Orbit of p/q under y -> r*y mod 1. The remainders m_k = p r^k mod q are
// eventually periodic; the preperiod is the least L with q1 | r^L, where
// q1 collects the prime factors q shares with r, and the period is the
// multiplicative order of r modulo q2 = q / q1.

#include <cstdint>
#include <string>

#include "takagi/error.hpp"
#include "takagi/rational.hpp"

namespace takagi::detail {

struct OrbitShape {
  std::uint64_t preperiod = 0;
  std::uint64_t period = 1;
};

inline bool fits_small(const Integer& q) {
  return q.fits_ulong_p() && q.get_ui() < (1ULL << 32);
}

inline OrbitShape orbit_shape(const Integer& q, std::uint64_t r, std::uint64_t max_states) {
  Integer q2 = q;
  Integer g;
  for (;;) {
    mpz_gcd_ui(g.get_mpz_t(), q2.get_mpz_t(), r);
    if (g == 1) break;
    q2 /= g;
  }
  Integer q1 = q / q2;

  OrbitShape shape;
  Integer t = 1 % q1;
  while (t != 0) {
    t = (t * r) % q1;
    ++shape.preperiod;
    if (shape.preperiod > max_states) throw CapExceeded("orbit preperiod exceeds cap of " + std::to_string(max_states));
  }

  if (q2 == 1) return shape;
  shape.period = 0;
  if (fits_small(q2)) {
    const std::uint64_t m = q2.get_ui();
    std::uint64_t u = r % m;
    shape.period = 1;
    while (u != 1) {
      u = (u * r) % m;
      ++shape.period;
      if (shape.preperiod + shape.period > max_states)
        throw CapExceeded("orbit period exceeds cap of " + std::to_string(max_states));
    }
  } else {
    Integer u = r % q2;
    shape.period = 1;
    while (u != 1) {
      u = (u * r) % q2;
      ++shape.period;
      if (shape.preperiod + shape.period > max_states)
        throw CapExceeded("orbit period exceeds cap of " + std::to_string(max_states));
    }
  }
  if (shape.preperiod + shape.period > max_states)
    throw CapExceeded("orbit length exceeds cap of " + std::to_string(max_states));
  return shape;
}

/// Calls f(m_k) for k = 0..count-1, where m_0 = p mod q and
/// m_{k+1} = r m_k mod q. f receives std::uint64_t on the small path
/// and const Integer& otherwise.
template <typename F>
void for_each_remainder(const Integer& p, const Integer& q, std::uint64_t r, std::uint64_t count, F&& f) {
  if (fits_small(q)) {
    const std::uint64_t m = q.get_ui();
    Integer p0 = p % q;
    std::uint64_t u = p0.get_ui();
    for (std::uint64_t k = 0; k < count; ++k) {
      f(u);
      u = (u * r) % m;
    }
  } else {
    Integer u = p % q;
    for (std::uint64_t k = 0; k < count; ++k) {
      f(static_cast<const Integer&>(u));
      u = (u * r) % q;
    }
  }
}

}  // namespace takagi::detail
