#include "takagi/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <thread>

#include "takagi/error.hpp"

namespace takagi {

namespace {

void check_block_length(unsigned n) {
  if (n < 3 || n % 2 == 0) throw DomainError("block length n must be odd and >= 3, got " + std::to_string(n));
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap, const char* what) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (out > cap / base) throw CapExceeded(std::string(what) + " exceeds cap of " + std::to_string(cap));
    out *= base;
  }
  return out;
}

std::uint64_t word_value(std::span<const Digit> word, std::uint64_t r) {
  std::uint64_t v = 0;
  for (Digit d : word) v = v * r + d;
  return v;
}

// O - I of the phi_r image; the last digit must be non-middle.
int block_drift(std::span<const Digit> word, Radix radix) {
  int drift = 0;
  int carry = 0;
  for (std::size_t i = word.size(); i-- > 0;) {
    const int sg = radix.digit_sign(word[i]);
    if (sg != 0) carry = sg;
    drift += carry;
  }
  return drift;
}

double log_integer(const Integer& v) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(mant) + double(exp) * std::log(2.0);
}

class DigitDraw {
 public:
  DigitDraw(std::uint64_t seed, int r) : state_(seed), r_(std::uint64_t(r)), rem_((0 - r_) % r_) {}

  Digit next() {
    for (;;) {
      const std::uint64_t x = splitmix64(state_);
      if (rem_ == 0 || x < 0 - rem_) return static_cast<Digit>(x % r_);
    }
  }

 private:
  std::uint64_t state_;
  std::uint64_t r_;
  std::uint64_t rem_;  // 2^64 mod r; values >= 2^64 - rem are rejected
};

struct Tally {
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;
  std::array<std::uint64_t, 3> tails{};
};

}  // namespace

bool in_B(std::span<const Digit> word, Radix radix, Sign sign) {
  if (word.empty()) return false;
  if (radix.is_middle(word.back())) return false;
  const Digit excluded = sign == Sign::Plus ? Digit(0) : radix.max_digit();
  if (std::all_of(word.begin(), word.end(), [&](Digit d) { return d == excluded; })) return false;
  const int drift = block_drift(word, radix);
  return sign == Sign::Plus ? drift >= 1 : drift <= -1;
}

WordSet enum_B(unsigned n, Radix radix, Sign sign) {
  check_block_length(n);
  const std::uint64_t r = radix.value();
  const std::uint64_t total = checked_pow(r, n, 1'000'000'000ULL, "word count r^n");
  WordSet set;
  set.n = n;
  set.radix = radix;
  set.sign = sign;
  DigitWord word(n, 0);
  for (std::uint64_t i = 0; i < total; ++i) {
    if (in_B(word, radix, sign)) set.words.push_back(word);
    for (std::size_t k = n; k-- > 0;) {
      if (++word[k] < r) break;
      word[k] = 0;
    }
  }
  return set;
}

Integer count_B(unsigned n, Radix radix) {
  check_block_length(n);
  const std::uint64_t r = radix.value();
  if (radix.is_odd()) return pow_int(r, n - 1) * ((r - 1) / 2) - 1;
  return (pow_int(r, n) - 2) / 2;
}

IntervalSet IntervalSet::unit(Radix radix) {
  IntervalSet set;
  set.radix = radix;
  set.lows = {0};
  return set;
}

std::pair<Rational, Rational> IntervalSet::interval(std::size_t i) const {
  const Integer den(std::to_string(denominator));
  const Integer lo(std::to_string(lows.at(i)));
  return {make_rational(lo, den), make_rational(lo + 1, den)};
}

IntervalSet ifs_approx(unsigned n, Radix radix, Sign sign, unsigned K, std::uint64_t cap) {
  check_block_length(n);
  if (K < 1) throw DomainError("ifs depth K must be >= 1");
  const WordSet B = enum_B(n, radix, sign);
  const std::uint64_t r = radix.value();
  const std::uint64_t letters = B.words.size();
  checked_pow(letters, K, cap, "interval count");
  const std::uint64_t block = checked_pow(r, n, std::numeric_limits<std::uint64_t>::max(), "r^n");

  IntervalSet set;
  set.radix = radix;
  set.n = n;
  set.depth = K;
  set.denominator = checked_pow(r, std::uint64_t(n) * K, std::numeric_limits<std::uint64_t>::max(), "denominator r^(nK)");

  std::vector<std::uint64_t> values;
  for (const auto& w : B.words) values.push_back(word_value(w, r));
  set.lows = {0};
  for (unsigned level = 0; level < K; ++level) {
    std::vector<std::uint64_t> next;
    next.reserve(set.lows.size() * values.size());
    for (std::uint64_t lo : set.lows)
      for (std::uint64_t z : values) next.push_back(lo * block + z);
    set.lows = std::move(next);
  }
  return set;
}

DimensionBounds dim_bounds(unsigned n, Radix radix, Sign /*sign*/) {
  DimensionBounds out;
  out.count = count_B(n, radix);  // #B^- == #B^+ by the mirror bijection
  const double log_r = std::log(double(radix.value()));
  out.exact_ratio = log_integer(out.count) / (n * log_r);
  if (radix.is_odd())
    out.lemma_bound = ((n - 1) * log_r - 1.0) / (n * log_r);
  else
    out.lemma_bound = 1.0 - (2.0 + std::log(2.0)) / (n * log_r);
  return out;
}

BoxDimension box_count_dim(const IntervalSet& set, std::span<const unsigned> exponents) {
  if (set.lows.empty()) throw DomainError("box counting needs a nonempty set");
  if (exponents.size() < 2) throw DomainError("box counting needs at least two grid exponents");
  const std::uint64_t r = set.radix.value();
  unsigned e = 0;
  for (std::uint64_t d = set.denominator; d > 1; d /= r) {
    if (d % r != 0) throw DomainError("interval denominator is not a power of the radix");
    ++e;
  }

  BoxDimension out;
  for (unsigned m : exponents) {
    BoxCount bc{m, 0};
    if (m <= e) {
      const std::uint64_t coarse = checked_pow(r, e - m, std::numeric_limits<std::uint64_t>::max(), "grid ratio");
      std::uint64_t last = std::numeric_limits<std::uint64_t>::max();
      for (std::uint64_t lo : set.lows) {
        const std::uint64_t box = lo / coarse;
        if (box != last) ++bc.boxes;
        last = box;
      }
    } else {
      const std::uint64_t fine = checked_pow(r, m - e, std::numeric_limits<std::uint64_t>::max() / set.size(), "box count");
      bc.boxes = set.size() * fine;
    }
    out.counts.push_back(bc);
  }

  const double log_r = std::log(double(r));
  double mx = 0, my = 0;
  for (const auto& bc : out.counts) {
    mx += bc.m * log_r;
    my += std::log(double(bc.boxes));
  }
  mx /= double(out.counts.size());
  my /= double(out.counts.size());
  double sxy = 0, sxx = 0;
  for (const auto& bc : out.counts) {
    const double dx = bc.m * log_r - mx;
    sxy += dx * (std::log(double(bc.boxes)) - my);
    sxx += dx * dx;
  }
  if (sxx == 0) throw DomainError("box counting needs at least two distinct grid exponents");
  out.slope = sxy / sxx;
  return out;
}

DigitStream membership_witness(unsigned n, Radix radix, Sign sign, std::span<const DigitWord> preperiod,
                               std::span<const DigitWord> period) {
  check_block_length(n);
  if (period.empty()) throw DomainError("witness address needs a nonempty period");
  auto append = [&](DigitWord& out, std::span<const DigitWord> letters) {
    for (const auto& w : letters) {
      if (w.size() != n || !in_B(w, radix, sign))
        throw DomainError("address letter '" + spell(w) + "' is not in B_" + std::to_string(n) +
                          (sign == Sign::Plus ? "^+" : "^-"));
      out.insert(out.end(), w.begin(), w.end());
    }
  };
  DigitWord pre, per;
  append(pre, preperiod);
  append(per, period);
  return DigitStream::periodic(radix, std::move(pre), std::move(per));
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

unsigned default_threads() {
  if (const char* env = std::getenv("TAKAGI_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return unsigned(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

NullMeasureStats sample_null_measure(Radix radix, std::uint64_t N, std::uint64_t samples, std::uint64_t seed,
                                     unsigned threads) {
  if (samples < 1) throw DomainError("sample count must be >= 1");
  if (N < 1) throw DomainError("digit depth must be >= 1");
  if (threads == 0) threads = default_threads();
  threads = unsigned(std::min<std::uint64_t>(threads, samples));

  const std::array<std::uint64_t, 3> c_sq{4, 9, 16};
  auto run = [&](std::uint64_t begin, std::uint64_t end, Tally& tally) {
    DigitWord word(N);
    for (std::uint64_t i = begin; i < end; ++i) {
      DigitDraw draw(seed ^ i, radix.value());
      for (auto& d : word) d = draw.next();
      int carry;
      do {
        carry = radix.digit_sign(draw.next());
      } while (carry == 0);
      std::int64_t s = 0;
      for (std::size_t k = N; k-- > 0;) {
        const int sg = radix.digit_sign(word[k]);
        if (sg != 0) carry = sg;
        s += carry;
      }
      tally.sum += s;
      tally.sum_sq += s * s;
      for (std::size_t c = 0; c < c_sq.size(); ++c)
        if (std::uint64_t(s * s) > c_sq[c] * N) ++tally.tails[c];
    }
  };

  std::vector<Tally> tallies(threads);
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (samples + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t begin = std::min(samples, t * chunk), end = std::min(samples, begin + chunk);
    if (t + 1 == threads)
      run(begin, end, tallies[t]);
    else
      pool.emplace_back(run, begin, end, std::ref(tallies[t]));
  }
  for (auto& th : pool) th.join();

  Tally total;
  for (const auto& t : tallies) {
    total.sum += t.sum;
    total.sum_sq += t.sum_sq;
    for (std::size_t c = 0; c < 3; ++c) total.tails[c] += t.tails[c];
  }

  NullMeasureStats stats;
  stats.samples = samples;
  stats.digits = N;
  const double n = double(samples);
  stats.mean = double(total.sum) / n;
  if (samples > 1) {
    const __int128 num = __int128(samples) * total.sum_sq - __int128(total.sum) * total.sum;
    stats.variance = double(num) / (n * (n - 1));
  }
  for (std::size_t c = 0; c < 3; ++c) stats.tail_fraction[c] = double(total.tails[c]) / n;
  return stats;
}

}  // namespace takagi
