#include "takagi/eval.hpp"

#include <type_traits>
#include <vector>

#include "orbit.hpp"
#include "takagi/error.hpp"

namespace takagi {

namespace {

void require_unit(const Rational& x) {
  if (x < 0 || x > 1) throw DomainError("point " + to_string(x) + " outside [0,1]");
}

// sum_k w[k] r^(n-1-k), split in halves so GMP multiplies balanced operands.
template <typename W>
Integer horner(const W* w, std::size_t n, std::uint64_t r) {
  if (n <= 32) {
    Integer acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      acc *= r;
      acc += w[i];
    }
    return acc;
  }
  const std::size_t half = n / 2;
  return horner(w, half, r) * pow_int(r, n - half) + horner(w + half, n - half, r);
}

// f = r / (q r^L) * (A_pre + A_cyc / (r^P - 1)), with A_pre, A_cyc the
// Horner sums of the orbit weights min(m_k, q - m_k).
template <typename W>
Rational orbit_sum(const std::vector<W>& w, const Integer& q, std::uint64_t r, const detail::OrbitShape& shape) {
  const std::size_t pre = shape.preperiod;
  const Integer a_pre = horner(w.data(), pre, r);
  const Integer a_cyc = horner(w.data() + pre, shape.period, r);
  const Integer repunit = pow_int(r, shape.period) - 1;
  Integer num = (a_pre * repunit + a_cyc) * r;
  Integer den = q * pow_int(r, pre) * repunit;
  return make_rational(num, den);
}

}  // namespace

Rational phi_dist(const Rational& x) {
  Rational f = frac(x);
  Rational g = 1 - f;
  return f < g ? f : g;
}

Rational g_n(const Rational& x, Index n, Radix radix) {
  if (n == 0) throw DomainError("g_n needs n >= 1");
  const Integer scale = pow_int(radix.value(), n - 1);
  Rational y = phi_dist(x * Rational(scale));
  y /= Rational(scale);
  return y;
}

Rational eval_exact(const Rational& x, Radix radix, std::uint64_t max_states) {
  require_unit(x);
  const std::uint64_t r = radix.value();
  const Integer& q = x.get_den();
  const auto shape = detail::orbit_shape(q, r, max_states);
  const std::uint64_t count = shape.preperiod + shape.period;

  if (detail::fits_small(q)) {
    const std::uint64_t qs = q.get_ui();
    std::vector<std::uint64_t> w;
    w.reserve(count);
    detail::for_each_remainder(x.get_num(), q, r, count, [&](const auto& m) {
      if constexpr (std::is_same_v<std::decay_t<decltype(m)>, std::uint64_t>) w.push_back(std::min(m, qs - m));
    });
    return orbit_sum(w, q, r, shape);
  }
  std::vector<Integer> w;
  w.reserve(count);
  detail::for_each_remainder(x.get_num(), q, r, count, [&](const auto& m) {
    if constexpr (!std::is_same_v<std::decay_t<decltype(m)>, std::uint64_t>) {
      Integer other = q - m;
      w.push_back(m < other ? m : other);
    }
  });
  return orbit_sum(w, q, r, shape);
}

Rational tail_bound(Radix radix, Index N) {
  const std::uint64_t r = radix.value();
  if (N == 0) return make_rational(Integer(r), Integer(2 * (r - 1)));
  return make_rational(Integer(1), pow_int(r, N - 1) * 2 * (r - 1));
}

Enclosure eval_partial(const Rational& x, Radix radix, Index N) {
  require_unit(x);
  if (N == 0) throw DomainError("eval_partial needs N >= 1");
  Rational sum = 0;
  for (Index n = 1; n <= N; ++n) sum += g_n(x, n, radix);
  const Rational t = tail_bound(radix, N);
  return {sum - t, sum + t};
}

Enclosure eval_partial(const DigitStream& s, Index N) {
  if (auto x = value_of(s)) return eval_partial(*x, s.radix(), N);
  if (N == 0) throw DomainError("eval_partial needs N >= 1");
  const std::uint64_t r = s.radix().value();
  Index extra = 2;
  for (Index p = 1; p < N + 1; p *= r) ++extra;
  const Index M = N + extra;
  const Rational x_lo = prefix_value(s, M);
  Rational sum = 0;
  for (Index n = 1; n <= N; ++n) sum += g_n(x_lo, n, s.radix());
  const Rational slack = tail_bound(s.radix(), N) + make_rational(Integer(N), pow_int(r, M));
  return {sum - slack, sum + slack};
}

Rational dtilde_series(const Rational& x, Radix radix) {
  const std::uint64_t r = radix.value();
  return make_rational(Integer(r), Integer(2 * (r - 1))) - eval_exact(x, radix);
}

Enclosure point_enclosure(const DigitStream& s, Index M) {
  if (auto x = value_of(s)) return Enclosure::exact(*x);
  // Every digit past M is `on` or `off`, so the tail lies between the
  // constant tails of the smaller and the larger of the two.
  const auto& sp = *s.sparse_body();
  const std::uint64_t r = s.radix().value();
  const Rational base = prefix_value(s, M);
  const Rational unit = make_rational(1, pow_int(r, M) * (r - 1));
  return {base + unit * std::min(sp.on, sp.off), base + unit * std::max(sp.on, sp.off)};
}

Rational next_grid_point(const DigitStream& s, Index n, std::uint64_t lookahead_cap) {
  if (n == 0) throw DomainError("grid level must be >= 1");
  const Radix radix = s.radix();
  const Integer scale = pow_int(radix.value(), n - 1);
  if (auto x = value_of(s)) {
    if (*x >= 1) throw DomainError("no grid point to the right of 1");
    const Rational step(Integer(1), 2 * scale);
    return (Rational(floor_of(*x / step)) + 1) * step;
  }
  // Generator: tail tau = r^(n-1) (x - xhat_n) is irrational; compare with 1/2.
  bool below_half;
  if (radix.is_even()) {
    below_half = 2 * int(s.digit(n)) < radix.value();
  } else {
    Index j = n;
    if (radix.is_middle(s.digit(n))) {
      auto k = next_index(s, DigitCondition::NotMiddle, n);
      if (!k) throw DomainError("point lies in D~");
      if (*k - n > lookahead_cap)
        throw CapExceeded("lookahead from digit " + std::to_string(n) + " exceeds cap of " +
                          std::to_string(lookahead_cap));
      j = *k;
    }
    below_half = radix.digit_sign(s.digit(j)) > 0;
  }
  const Rational base = prefix_value(s, n - 1);
  return base + (below_half ? Rational(Integer(1), 2 * scale) : Rational(Integer(1), scale));
}

Rational prev_grid_point(const DigitStream& s, Index n) {
  if (n == 0) throw DomainError("grid level must be >= 1");
  const Integer scale = pow_int(s.radix().value(), n - 1);
  if (auto x = value_of(s)) {
    if (*x <= 0) throw DomainError("no grid point to the left of 0");
    return Rational(ceil_of(*x * Rational(scale)) - 1) / Rational(scale);
  }
  return prefix_value(s, n - 1);
}

Rational d_n(const DigitStream& s, Index n) {
  if (classify_point(s) != PointClass::Generic) throw DomainError("d_n needs a point outside D u D~");
  auto x = value_of(s);
  if (!x) throw DomainError("d_n of a generator stream is irrational; use d_n_enclosure");
  return next_grid_point(s, n) - *x;
}

Enclosure d_n_enclosure(const DigitStream& s, Index n, Index digits, std::uint64_t lookahead_cap) {
  if (classify_point(s) != PointClass::Generic) throw DomainError("d_n needs a point outside D u D~");
  const Rational y = next_grid_point(s, n, lookahead_cap);
  const Enclosure x = point_enclosure(s, digits);
  return {y - x.hi, y - x.lo};
}

}  // namespace takagi
