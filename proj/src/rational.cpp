#include "takagi/rational.hpp"

#include <cctype>

#include "takagi/error.hpp"

namespace takagi {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer pow_int(std::uint64_t base, std::uint64_t exp) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

Rational inv_pow(std::uint64_t base, std::uint64_t exp) {
  return Rational(Integer(1), pow_int(base, exp));
}

Integer floor_of(const Rational& x) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& x) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

Rational frac(const Rational& x) { return x - Rational(floor_of(x)); }

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  bool negative = false;
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num_text = body.substr(0, slash);
  std::string_view den_text = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text))
    throw ParseError("malformed rational '" + std::string(text) + "'");
  Integer num(std::string(num_text), 10);
  Integer den(std::string(den_text), 10);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  if (negative) num = -num;
  return make_rational(num, den);
}

double to_double(const Rational& x) { return x.get_d(); }

}  // namespace takagi
