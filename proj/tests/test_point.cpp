#include <doctest.h>

#include <random>

#include "support.hpp"
#include "takagi/error.hpp"
#include "takagi/point.hpp"

using namespace takagi;

TEST_CASE("rational form") {
  CHECK(parse_point("1/3", Radix(2)) == digits_of(Rational(1, 3), Radix(2)));
  CHECK(parse_point("2/6", Radix(2)) == digits_of(Rational(1, 3), Radix(2)));
  CHECK(parse_point("1", Radix(3)) == digits_of(Rational(1), Radix(3)));
  CHECK_THROWS_AS(parse_point("1/3", std::nullopt), ParseError);
  CHECK_THROWS_AS(parse_point("4/3", Radix(2)), ParseError);
}

TEST_CASE("digit form") {
  const auto s = parse_point("0.1(01)_2", std::nullopt);
  CHECK(s == DigitStream::periodic(Radix(2), {1}, {0, 1}));
  CHECK(parse_point("0.1_3", std::nullopt) == digits_of(Rational(1, 3), Radix(3)));
  CHECK(parse_point("0.(1)_3", Radix(3)) == digits_of(Rational(1, 2), Radix(3)));
  CHECK_THROWS_AS(parse_point("0.(1)_3", Radix(2)), ParseError);
  for (const char* bad : {"0.(1_3", "0.1)_3", "0.()_3", "0.(1)(2)_3", "0.(1)2_3", "0.3_3", "0.1_", "0.1_1", "1.1_3"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_point(bad, std::nullopt), ParseError);
  }
}

TEST_CASE("sparse form") {
  const auto s = parse_point("sparse:b=10,on=0,off=1", Radix(3));
  CHECK(s == DigitStream::sparse(Radix(3), SparsePowers{10, 0, 1, 0}));
  CHECK(format_point(s) == "sparse:b=10,on=0,off=1");
  const auto k1 = parse_point("sparse:b=10,on=0,off=1,k0=1", Radix(3));
  CHECK(k1.digit(1) == 1);
  CHECK(k1.digit(10) == 0);
  for (const char* bad : {"sparse:b=10,on=0", "sparse:b=1,on=0,off=1", "sparse:b=10,on=3,off=1", "sparse:b=10,on=0,off=1,x=2",
                          "sparse:b=10,b=10,on=0,off=1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_point(bad, Radix(3)), ParseError);
  }
}

TEST_CASE("format_point round trip") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int r = 2 + int(gen() % 35);
    DigitWord pre(gen() % 5), per(1 + gen() % 5);
    for (auto& d : pre) d = Digit(gen() % r);
    for (auto& d : per) d = Digit(gen() % r);
    const auto s = DigitStream::periodic(Radix(r), pre, per);
    const std::string text = format_point(s);
    CAPTURE(text);
    CHECK(parse_point(text, std::nullopt) == s);
    CHECK(parse_point(text, Radix(r)) == s);
  }
  // The sparse form carries no base; it is supplied alongside.
  for (const char* text : {"sparse:b=10,on=0,off=1", "sparse:b=7,on=2,off=0,k0=3"}) {
    CHECK(format_point(parse_point(text, Radix(5))) == text);
  }
}
