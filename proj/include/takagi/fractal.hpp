#pragma once

// Self-similar subsets of the infinite-derivative sets.
//
// B_n^+ (n odd, n >= 3) is the set of length-n digit words z > 0 whose last
// digit is not (r-1)/2 and whose phi_r image has O_n - I_n >= 1. B_n^- is
// its digit-complement mirror (eps -> r-1-eps), i.e. O_n - I_n <= -1 with
// the all-(r-1) word excluded. The attractor A_n^+- of the maps
// x -> z + x / r^n, z in B_n^+-, is the set of points whose consecutive
// length-n digit blocks all lie in B_n^+-; reading membership block by block
// is equivalent to the fractional-part formulation since the k-th block of
// x is r^(nk) x truncated to n further digits.

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "takagi/classify.hpp"
#include "takagi/digits.hpp"

namespace takagi {

struct WordSet {
  unsigned n = 0;
  Radix radix{2};
  Sign sign = Sign::Plus;
  std::vector<DigitWord> words;  // ascending
};

/// Exhaustive enumeration over all r^n words. Throws DomainError for even
/// or too small n, CapExceeded when r^n exceeds 10^9.
WordSet enum_B(unsigned n, Radix radix, Sign sign);

/// True iff `word` belongs to B_n^sign (n = word length).
bool in_B(std::span<const Digit> word, Radix radix, Sign sign);

/// Closed-form #B_n: r^(n-1)(r-1)/2 - 1 for odd r, (r^n - 2)/2 for even r.
Integer count_B(unsigned n, Radix radix);

/// Generation-K intervals [lo_i / den, (lo_i + 1) / den] with den = r^(nK),
/// stored unmerged and sorted.
struct IntervalSet {
  Radix radix{2};
  unsigned n = 0;
  unsigned depth = 0;
  std::uint64_t denominator = 1;
  std::vector<std::uint64_t> lows;

  static IntervalSet unit(Radix radix);

  std::size_t size() const { return lows.size(); }
  std::pair<Rational, Rational> interval(std::size_t i) const;
  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;
};

inline constexpr std::uint64_t kDefaultIntervalCap = 10'000'000;

/// Depth-K image of [0,1] under the maps of B_n^sign: (#B)^K intervals of
/// length r^(-nK). Throws CapExceeded above `cap` intervals.
IntervalSet ifs_approx(unsigned n, Radix radix, Sign sign, unsigned K, std::uint64_t cap = kDefaultIntervalCap);

struct DimensionBounds {
  Integer count;
  double exact_ratio = 0.0;  // log #B / (n log r)
  double lemma_bound = 0.0;
};

DimensionBounds dim_bounds(unsigned n, Radix radix, Sign sign);

struct BoxCount {
  unsigned m = 0;
  std::uint64_t boxes = 0;
};

struct BoxDimension {
  double slope = 0.0;
  std::vector<BoxCount> counts;
};

/// Least-squares slope of log N(m) against m log r, where N(m) counts the
/// half-open grid boxes [j r^-m, (j+1) r^-m) meeting the half-open intervals.
BoxDimension box_count_dim(const IntervalSet& set, std::span<const unsigned> exponents);

/// Eventually periodic stream whose length-n blocks spell `preperiod`
/// letters once and then `period` letters forever. Throws DomainError on a
/// letter outside B_n^sign or an empty period.
DigitStream membership_witness(unsigned n, Radix radix, Sign sign, std::span<const DigitWord> preperiod,
                               std::span<const DigitWord> period);

struct NullMeasureStats {
  std::uint64_t samples = 0;
  std::uint64_t digits = 0;
  double mean = 0.0;
  double variance = 0.0;                  // unbiased
  std::array<double, 3> tail_fraction{};  // P(|S_N| > c sqrt(N)), c = 2, 3, 4
};

/// splitmix64 step.
std::uint64_t splitmix64(std::uint64_t& state);

/// S_N of uniform random digit words. Sample i draws from splitmix64 seeded
/// with seed ^ i, so results do not depend on `threads` (0 = TAKAGI_THREADS
/// or hardware concurrency). A middle run reaching position N is resolved by
/// drawing further digits until a non-middle one appears.
NullMeasureStats sample_null_measure(Radix radix, std::uint64_t N, std::uint64_t samples, std::uint64_t seed,
                                     unsigned threads = 0);

/// TAKAGI_THREADS if set and positive, else std::thread::hardware_concurrency.
unsigned default_threads();

}  // namespace takagi
