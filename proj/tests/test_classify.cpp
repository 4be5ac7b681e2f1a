#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "support.hpp"
#include "takagi/classify.hpp"
#include "takagi/error.hpp"

using namespace takagi;

namespace {

const Radix R2(2), R3(3), R5(5);

DigitStream ep(int r, DigitWord pre, DigitWord per) { return DigitStream::periodic(Radix(r), std::move(pre), std::move(per)); }
DigitStream at(long p, long q, int r) { return digits_of(make_rational(p, q), Radix(r)); }
DigitStream example_sparse() { return DigitStream::sparse(R3, SparsePowers{10, 0, 1, 0}); }

std::vector<DigitStream> seeded_generic(std::size_t count, std::uint64_t seed, std::vector<int> radices) {
  std::vector<DigitStream> out;
  std::size_t i = 0;
  for (const auto& x : testing::seeded_rationals(count * 4, seed, 500)) {
    const auto s = digits_of(x, Radix(radices[i++ % radices.size()]));
    if (classify_point(s) == PointClass::Generic) out.push_back(s);
    if (out.size() == count) break;
  }
  return out;
}

Rational quotient(const Rational& x, const Rational& h, Radix r) { return (eval_exact(x + h, r) - eval_exact(x, r)) / h; }

}  // namespace

TEST_CASE("phi_r_map examples") {
  CHECK(phi_r_map(ep(3, {}, {2, 0})) == ep(3, {}, {2, 0}));
  CHECK(phi_r_map(ep(3, {1}, {2})) == ep(3, {2}, {2}));
  CHECK(phi_r_map(ep(5, {}, {2, 4})) == ep(5, {}, {4, 4}));
  CHECK(phi_r_map(ep(4, {1, 2}, {3, 0})) == ep(4, {1, 2}, {3, 0}));
  CHECK(phi_r_map(example_sparse()) == ep(3, {}, {0}));
  CHECK_THROWS_AS(phi_r_map(ep(3, {0}, {1})), DomainError);
}

TEST_CASE("deriv_signs examples") {
  const auto t = deriv_signs(at(1, 3, 2), 4);
  CHECK(t.signs == std::vector<int>{1, -1, 1, -1});
  CHECK(t.partial_sums.back() == 0);
  CHECK(t.below_middle + t.above_middle == 4);

  const auto sp = deriv_signs(example_sparse(), 10);
  CHECK(sp.signs == std::vector<int>(10, 1));
  CHECK(sp.below_middle == 2);  // digits 1 and 10 are zero, the rest are middle
  CHECK(sp.above_middle == 0);

  CHECK(deriv_signs(ep(5, {2, 4}, {1, 3}), 2).signs[0] == -1);
  CHECK_THROWS_AS(deriv_signs(at(1, 4, 2), 5), DomainError);
  CHECK_THROWS_AS(deriv_signs(at(1, 2, 3), 5), DomainError);
}

TEST_CASE("deriv_signs matches the slope of g_n on seeded rationals") {
  // g_n has slope +1 on the left half of each D_n cell and -1 on the right.
  for (const auto& s : seeded_generic(300, 41, {2, 3, 4, 5, 7})) {
    const Rational x = *value_of(s);
    const int r = s.radix().value();
    const auto t = deriv_signs(s, 40);
    std::int64_t sum = 0;
    for (Index n = 1; n <= 40; ++n) {
      const Rational cell = frac(x * Rational(pow_int(r, n - 1)));
      REQUIRE(cell != Rational(1, 2));
      const int expect = cell < Rational(1, 2) ? 1 : -1;
      REQUIRE(t.signs[n - 1] == expect);
      sum += expect;
      REQUIRE(t.partial_sums[n - 1] == sum);
    }
    if (s.radix().is_even()) CHECK(t.below_middle + t.above_middle == 40);
    CHECK(t.below_middle + t.above_middle <= 40);
  }
}

TEST_CASE("sign symmetry under x -> 1 - x") {
  for (const auto& s : seeded_generic(200, 43, {2, 3, 4, 5})) {
    const auto mirror = digits_of(1 - *value_of(s), s.radix());
    const auto a = deriv_signs(s, 60), b = deriv_signs(mirror, 60);
    for (std::size_t k = 0; k < 60; ++k) REQUIRE(a.signs[k] == -b.signs[k]);
  }
}

TEST_CASE("phi_r compatibility") {
  for (const auto& s : seeded_generic(200, 47, {3, 5, 7})) {
    const auto phi = phi_r_map(s);
    const auto signs = deriv_signs(s, 60).signs;
    for (Index k = 1; k <= 60; ++k) REQUIRE(signs[k - 1] == s.radix().digit_sign(phi.digit(k)));
    // phi(x) may land in D (e.g. a middle digit followed by zeros forever).
    if (classify_point(phi) == PointClass::Generic) REQUIRE(signs == deriv_signs(phi, 60).signs);
  }
}

TEST_CASE("index_seq examples") {
  CHECK(index_seq(example_sparse(), IndexKind::NotZero, 3).indices == std::vector<Index>{2, 3, 4});
  CHECK(index_seq(at(1, 3, 2), IndexKind::NotMiddle, 4).indices == std::vector<Index>{1, 2, 3, 4});
  CHECK(index_seq(ep(3, {}, {1, 2}), IndexKind::NotMiddle, 3).indices == std::vector<Index>{2, 4, 6});
  CHECK(index_seq(example_sparse(), IndexKind::NotMax, 4).indices == std::vector<Index>{1, 2, 3, 4});
  CHECK(index_seq(example_sparse(), IndexKind::NotMiddle, 4).indices == std::vector<Index>{1, 10, 100, 1000});
  CHECK_THROWS_AS(index_seq(ep(2, {1}, {0}), IndexKind::NotZero, 3), DomainError);
}

TEST_CASE("criterion_sequence examples") {
  const auto seventh = criterion_sequence(at(1, 7, 2), Side::Right, Sign::Plus, 30);
  for (std::size_t i = 0; i < seventh.size(); ++i) {
    CHECK(seventh[i].anchor == i + 1);
    CHECK(seventh[i].gap == 1);
    CHECK(seventh[i].value == double(seventh[i].sum_part - 1));  // gap 1 subtracts 1, log_r 1 = 0
  }
  CHECK(seventh[29].sum_part == 10);  // S_{3m} = m

  for (const auto& t : criterion_sequence(at(1, 3, 2), Side::Right, Sign::Plus, 50)) {
    CHECK(t.value >= -1);
    CHECK(t.value <= 0);
  }

  const auto sp = criterion_sequence(example_sparse(), Side::Right, Sign::Plus, 4);
  CHECK(sp[1].anchor == 10);
  CHECK(sp[1].gap == 90);
  CHECK(sp[1].value == doctest::Approx(10.0 - 90.0 + std::log(90.0) / std::log(3.0)));
  CHECK(sp[2].value < sp[1].value);
  CHECK(criterion_anchor(Side::Left, Sign::Plus) == IndexKind::NotZero);
  CHECK(criterion_anchor(Side::Right, Sign::Minus) == IndexKind::NotMax);
  CHECK(criterion_anchor(Side::Left, Sign::Minus) == IndexKind::NotMiddle);
}

TEST_CASE("reflection duality between Left/Minus at x and Right/Plus at 1 - x") {
  for (const auto& s : seeded_generic(100, 53, {2, 3, 5})) {
    const auto mirror = digits_of(1 - *value_of(s), s.radix());
    const auto a = criterion_sequence(s, Side::Left, Sign::Minus, 40);
    const auto b = criterion_sequence(mirror, Side::Right, Sign::Plus, 40);
    for (std::size_t k = 0; k < 40; ++k) {
      REQUIRE(a[k].anchor == b[k].anchor);
      REQUIRE(a[k].value == doctest::Approx(-b[k].value));
    }
  }
}

TEST_CASE("certify examples") {
  auto v = certify(at(1, 4, 2));
  CHECK(v.right.result == DerivResult::PlusInfinity);
  CHECK(v.left.result == DerivResult::MinusInfinity);
  CHECK(v.left.certified());

  v = certify(at(1, 2, 3));
  CHECK(v.right.result == DerivResult::MinusInfinity);
  CHECK(v.left.result == DerivResult::PlusInfinity);

  v = certify(at(1, 7, 2));
  CHECK(v.right.result == DerivResult::PlusInfinity);
  CHECK(v.left.result == DerivResult::PlusInfinity);
  CHECK(period_drift(at(1, 7, 2)) == 1);

  v = certify(at(1, 3, 2));
  CHECK(v.right.result == DerivResult::NotInfinite);
  CHECK(v.left.result == DerivResult::NotInfinite);

  CHECK_THROWS_AS(certify(example_sparse()), DomainError);
}

TEST_CASE("even r: positive drift gives right +inf") {
  std::mt19937_64 gen(59);
  int seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int r = 2 * (1 + int(gen() % 3));
    DigitWord pre(gen() % 3), per(1 + gen() % 5);
    for (auto& d : pre) d = Digit(gen() % r);
    for (auto& d : per) d = Digit(gen() % r);
    const auto s = ep(r, pre, per);
    if (classify_point(s) != PointClass::Generic || period_drift(s) <= 0) continue;
    ++seen;
    CHECK(certify(s).right.result == DerivResult::PlusInfinity);
  }
  CHECK(seen > 50);
}

TEST_CASE("heuristic verdicts") {
  const auto v = heuristic_verdict(example_sparse(), 4);
  CHECK(v.left.result == DerivResult::PlusInfinity);
  CHECK(v.right.result == DerivResult::NotInfinite);
  CHECK_FALSE(v.left.certified());
  REQUIRE(v.left.heuristic);
  CHECK(v.left.heuristic->depth == 4);

  const auto third = heuristic_verdict(at(1, 3, 2), 3);
  CHECK(third.left.result == DerivResult::NotInfinite);
  CHECK(third.right.result == DerivResult::NotInfinite);

  for (const auto& s : {at(1, 7, 2), at(6, 7, 2), at(1, 3, 2), at(5, 13, 3), at(1, 10, 3)}) {
    const auto h = heuristic_verdict(s, 3), c = certify(s);
    CHECK(h.left.result == c.left.result);
    CHECK(h.right.result == c.right.result);
  }

  // A generator that degenerates to a periodic stream is certified.
  const auto flat = classify(DigitStream::sparse(R3, SparsePowers{10, 0, 0, 0}), 3);
  CHECK(flat.left.certified());
  CHECK(flat.right.result == DerivResult::PlusInfinity);

  CHECK_THROWS_AS(heuristic_verdict(example_sparse(), 0), DomainError);
  CHECK_THROWS_AS(heuristic_verdict(example_sparse(), kMaxHeuristicDepth + 1), DomainError);
}

TEST_CASE("quotient_probe examples") {
  const auto quarter = quotient_probe(at(1, 4, 2), Side::Right, 16);
  REQUIRE(quarter.size() == 16);
  bool exceeded = false;
  for (const auto& st : quarter) {
    CHECK(st.quotient.is_exact());
    exceeded = exceeded || st.quotient.lo > 10;
  }
  CHECK(exceeded);

  const auto seventh = quotient_probe(at(1, 7, 2), Side::Right, 40);
  CHECK(seventh.back().quotient.lo > seventh.front().quotient.lo + 5);

  for (const auto& st : quotient_probe(at(1, 3, 2), Side::Right, 20)) {
    CHECK(st.quotient.lo >= -3);
    CHECK(st.quotient.hi <= 3);
  }

  // Steps agree with direct evaluation and the targets are strictly monotone.
  const auto s = at(5, 13, 3);
  const Rational x = *value_of(s);
  for (Side side : {Side::Left, Side::Right}) {
    const auto steps = quotient_probe(s, side, 25);
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const Rational h = steps[i].h.lo;
      CHECK(steps[i].target == (side == Side::Right ? Rational(x + h) : Rational(x - h)));
      CHECK(steps[i].quotient.lo == (eval_exact(steps[i].target, R3) - eval_exact(x, R3)) / (steps[i].target - x));
      if (i > 0) CHECK(steps[i].h.lo < steps[i - 1].h.lo);
    }
  }
}

TEST_CASE("generator probes enclose the quotient") {
  const auto steps = quotient_probe(example_sparse(), Side::Left, 6);
  REQUIRE(steps.size() == 6);
  for (const auto& st : steps) {
    CHECK(st.h.lo > 0);
    CHECK(st.quotient.width() < 1);
  }
}

TEST_CASE("bracket around S_n") {
  for (const auto& s : seeded_generic(100, 61, {2, 3})) {
    for (Index n = 1; n <= 40; ++n) {
      const auto b = component_bracket(s, n);
      REQUIRE(b.holds());
    }
  }
}

TEST_CASE("right-ladder quotients dominate S_n - r/(r-1) - 1") {
  // For each n the step is d_n, or d at the end of the previous run of
  // equal ladder values. Inside the first run that previous run would be
  // level 0, which has no ladder value, so those n are skipped.
  for (const auto& s : seeded_generic(60, 67, {2, 3, 4})) {
    const Radix r = s.radix();
    const Rational x = *value_of(s);
    const Rational slack = make_rational(r.value(), r.value() - 1) + 1;
    const auto t = deriv_signs(s, 30);
    std::vector<Rational> d(32);
    for (Index j = 1; j <= 31; ++j) d[j] = d_n(s, j);
    Index run_end = 0;
    for (Index n = 1; n <= 30; ++n) {
      if (run_end > 0) {
        const Rational best = std::max(quotient(x, d[n], r), quotient(x, d[run_end], r));
        REQUIRE(best >= Rational(t.partial_sums[n - 1]) - slack);
      }
      if (d[n + 1] < d[n]) run_end = n;
    }
  }
}
