#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace takagi {

using Integer = mpz_class;
using Rational = mpq_class;

/// num/den in lowest terms; throws DomainError when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

Integer pow_int(std::uint64_t base, std::uint64_t exp);

/// base^(-exp) as an exact rational.
Rational inv_pow(std::uint64_t base, std::uint64_t exp);

Integer floor_of(const Rational& x);
Integer ceil_of(const Rational& x);

/// x - floor(x), always in [0, 1).
Rational frac(const Rational& x);

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& x);

/// Accepts "p/q" or "p" with optional leading '-'. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Nearest double (for reporting only).
double to_double(const Rational& x);

}  // namespace takagi
