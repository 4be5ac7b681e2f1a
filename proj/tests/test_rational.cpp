#include <doctest.h>

#include "takagi/error.hpp"
#include "takagi/rational.hpp"

using namespace takagi;

TEST_CASE("make_rational reduces and rejects zero denominators") {
  CHECK(make_rational(6, 8) == Rational(3, 4));
  CHECK(make_rational(6, 8).get_den() == 4);
  CHECK(make_rational(-2, -4) == Rational(1, 2));
  CHECK_THROWS_AS(make_rational(1, 0), DomainError);
}

TEST_CASE("powers") {
  CHECK(pow_int(3, 0) == 1);
  CHECK(pow_int(3, 4) == 81);
  CHECK(inv_pow(2, 10) == Rational(1, 1024));
}

TEST_CASE("floor, ceil and fractional part") {
  CHECK(floor_of(Rational(7, 2)) == 3);
  CHECK(ceil_of(Rational(7, 2)) == 4);
  CHECK(floor_of(Rational(-7, 2)) == -4);
  CHECK(ceil_of(Rational(-7, 2)) == -3);
  CHECK(floor_of(Rational(4)) == 4);
  CHECK(ceil_of(Rational(4)) == 4);
  CHECK(frac(Rational(-1, 3)) == Rational(2, 3));
  CHECK(frac(Rational(5, 3)) == Rational(2, 3));
}

TEST_CASE("text round trip") {
  for (const char* text : {"0", "1", "1/2", "-3/7", "1/123456789012345678901234567890"}) {
    CHECK(to_string(parse_rational(text)) == text);
  }
  CHECK(parse_rational("4/8") == Rational(1, 2));
  CHECK(to_string(parse_rational("4/8")) == "1/2");
  for (const char* bad : {"", "/", "1/", "/2", "1/0", "a", "1/2/3", "1.5", " 1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), ParseError);
  }
}

TEST_CASE("to_double") {
  CHECK(to_double(Rational(1, 4)) == 0.25);
  CHECK(to_double(Rational(2, 3)) == doctest::Approx(2.0 / 3.0));
}
