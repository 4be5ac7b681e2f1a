#include "takagi/digits.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <type_traits>

#include "orbit.hpp"
#include "takagi/error.hpp"

namespace takagi {

Radix::Radix(int r) : r_(r) {
  if (r < 2 || r > kMax) throw DomainError("radix must lie in [2, 36], got " + std::to_string(r));
}

namespace {

// Minimal period of the word, then minimal preperiod by rotating the
// period backwards over matching preperiod digits.
void canonicalize(DigitWord& pre, DigitWord& per) {
  const std::size_t n = per.size();
  std::vector<std::size_t> border(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = border[i - 1];
    while (k > 0 && per[i] != per[k]) k = border[k - 1];
    if (per[i] == per[k]) ++k;
    border[i] = k;
  }
  const std::size_t p = n - border[n - 1];
  if (n % p == 0) per.resize(p);

  while (!pre.empty() && pre.back() == per.back()) {
    std::rotate(per.begin(), per.end() - 1, per.end());
    pre.pop_back();
  }
}

void check_digits(Radix radix, const DigitWord& word) {
  for (Digit d : word)
    if (int(d) >= radix.value())
      throw DomainError("digit " + std::to_string(int(d)) + " out of range for radix " +
                        std::to_string(radix.value()));
}

// Smallest b^k >= n with k >= k0, or nullopt on 64-bit overflow.
std::optional<Index> power_at_least(std::uint64_t b, std::uint32_t k0, Index n) {
  Index p = 1;
  for (std::uint32_t k = 0; k < k0; ++k) {
    if (p > std::numeric_limits<Index>::max() / b) return std::nullopt;
    p *= b;
  }
  while (p < n) {
    if (p > std::numeric_limits<Index>::max() / b) return std::nullopt;
    p *= b;
  }
  return p;
}

bool is_sparse_position(const SparsePowers& sp, Index n) {
  auto p = power_at_least(sp.base, sp.first_exponent, n);
  return p && *p == n;
}

char digit_char(Digit d) { return d < 10 ? char('0' + d) : char('a' + (d - 10)); }

Integer word_integer(std::span<const Digit> word, Radix radix) {
  if (word.empty()) return Integer(0);
  std::string text = spell(word);
  return Integer(text, radix.value());
}

}  // namespace

DigitStream DigitStream::periodic(Radix radix, DigitWord preperiod, DigitWord period) {
  if (period.empty()) throw DomainError("period must be nonempty");
  check_digits(radix, preperiod);
  check_digits(radix, period);
  canonicalize(preperiod, period);
  return DigitStream(radix, EventuallyPeriodic{std::move(preperiod), std::move(period)});
}

DigitStream DigitStream::sparse(Radix radix, SparsePowers body) {
  if (body.base < 2) throw DomainError("sparse generator base must be >= 2");
  check_digits(radix, DigitWord{body.on, body.off});
  if (body.on == body.off) return periodic(radix, {}, {body.on});
  return DigitStream(radix, body);
}

Digit DigitStream::digit(Index n) const {
  if (const auto* ep = periodic_body()) {
    const Index pre = ep->preperiod.size();
    if (n <= pre) return ep->preperiod[n - 1];
    return ep->period[(n - 1 - pre) % ep->period.size()];
  }
  const auto& sp = *sparse_body();
  return is_sparse_position(sp, n) ? sp.on : sp.off;
}

DigitStream digits_of(const Rational& x, Radix radix, Tail tail, std::uint64_t max_states) {
  if (x < 0 || x > 1) throw DomainError("point " + to_string(x) + " outside [0,1]");
  const Digit top = radix.max_digit();
  if (x == 1) return DigitStream::periodic(radix, {}, {top});

  const Integer& p = x.get_num();
  const Integer& q = x.get_den();
  const std::uint64_t r = radix.value();
  const auto shape = detail::orbit_shape(q, r, max_states);
  const std::uint64_t count = shape.preperiod + shape.period;

  DigitWord word;
  word.reserve(count);
  const bool small = detail::fits_small(q);
  const std::uint64_t qs = small ? q.get_ui() : 0;
  detail::for_each_remainder(p, q, r, count, [&](const auto& m) {
    if constexpr (std::is_same_v<std::decay_t<decltype(m)>, std::uint64_t>) {
      word.push_back(static_cast<Digit>((m * r) / qs));
    } else {
      Integer d = (m * r) / q;
      word.push_back(static_cast<Digit>(d.get_ui()));
    }
  });

  DigitWord pre(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(shape.preperiod));
  DigitWord per(word.begin() + static_cast<std::ptrdiff_t>(shape.preperiod), word.end());
  if (tail == Tail::MaxDigits && per == DigitWord{0} && !pre.empty()) {
    // x > 0 lies in D: ...d000... == ...(d-1)(r-1)(r-1)...
    pre.back() = static_cast<Digit>(pre.back() - 1);
    per = DigitWord{top};
  }
  return DigitStream::periodic(radix, std::move(pre), std::move(per));
}

Digit digit_at(const DigitStream& s, Index n) {
  if (n == 0) throw DomainError("digit index must be >= 1");
  return s.digit(n);
}

Rational prefix_value(const DigitStream& s, Index n) {
  if (n == 0) return Rational(0);
  DigitWord word(n);
  for (Index k = 1; k <= n; ++k) word[k - 1] = s.digit(k);
  Rational out(word_integer(word, s.radix()), pow_int(s.radix().value(), n));
  out.canonicalize();
  return out;
}

std::optional<Rational> value_of(const DigitStream& s) {
  const auto* ep = s.periodic_body();
  if (!ep) return std::nullopt;
  const std::uint64_t r = s.radix().value();
  const Integer head = word_integer(ep->preperiod, s.radix());
  const Integer cycle = word_integer(ep->period, s.radix());
  const Integer scale = pow_int(r, ep->preperiod.size());
  const Integer repunit = pow_int(r, ep->period.size()) - 1;
  return make_rational(head * repunit + cycle, scale * repunit);
}

PointClass classify_point(const DigitStream& s) {
  const auto* ep = s.periodic_body();
  if (!ep) return PointClass::Generic;  // on != off: never eventually constant
  if (ep->period.size() != 1) return PointClass::Generic;
  const Digit d = ep->period.front();
  if (d == 0 || d == s.radix().max_digit()) return PointClass::InD;
  if (s.radix().is_middle(d)) return PointClass::InDTilde;
  return PointClass::Generic;
}

bool satisfies(Radix radix, DigitCondition cond, Digit d) {
  switch (cond) {
    case DigitCondition::NotMiddle: return !radix.is_middle(d);
    case DigitCondition::NotZero: return d != 0;
    case DigitCondition::NotMax: return d != radix.max_digit();
  }
  return false;
}

std::optional<Index> next_index(const DigitStream& s, DigitCondition cond, Index after) {
  const Radix radix = s.radix();
  if (after == std::numeric_limits<Index>::max()) throw CapExceeded("digit index overflow");
  if (const auto* ep = s.periodic_body()) {
    const Index pre = ep->preperiod.size();
    const Index horizon = std::max(after, pre) + ep->period.size();
    for (Index j = after + 1; j <= horizon; ++j)
      if (satisfies(radix, cond, s.digit(j))) return j;
    return std::nullopt;
  }
  const auto& sp = *s.sparse_body();
  const bool on_ok = satisfies(radix, cond, sp.on);
  const bool off_ok = satisfies(radix, cond, sp.off);
  if (!on_ok && !off_ok) return std::nullopt;
  if (on_ok && off_ok) return after + 1;
  if (off_ok) {
    Index j = after + 1;
    while (is_sparse_position(sp, j)) ++j;
    return j;
  }
  auto p = power_at_least(sp.base, sp.first_exponent, after + 1);
  if (!p) throw CapExceeded("next sparse position overflows 64 bits");
  return p;
}

std::string spell(std::span<const Digit> word) {
  std::string out;
  out.reserve(word.size());
  for (Digit d : word) out.push_back(digit_char(d));
  return out;
}

DigitWord parse_word(std::string_view text, Radix radix) {
  DigitWord out;
  out.reserve(text.size());
  for (char c : text) {
    int d;
    if (c >= '0' && c <= '9')
      d = c - '0';
    else if (c >= 'a' && c <= 'z')
      d = 10 + (c - 'a');
    else
      throw ParseError(std::string("invalid digit character '") + c + "'");
    if (d >= radix.value())
      throw ParseError(std::string("digit '") + c + "' out of range for radix " + std::to_string(radix.value()));
    out.push_back(static_cast<Digit>(d));
  }
  return out;
}

}  // namespace takagi
