#include "takagi/point.hpp"

#include <charconv>
#include <map>

#include "takagi/error.hpp"

namespace takagi {

namespace {

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  return v;
}

Radix require(std::optional<Radix> radix, std::string_view text) {
  if (!radix) throw ParseError("point '" + std::string(text) + "' needs an explicit radix");
  return *radix;
}

DigitStream parse_sparse(std::string_view body, std::string_view text, Radix radix) {
  std::map<std::string, std::uint64_t, std::less<>> fields;
  while (!body.empty()) {
    auto comma = body.find(',');
    auto item = body.substr(0, comma);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("malformed sparse field in '" + std::string(text) + "'");
    std::string key(item.substr(0, eq));
    if (key != "b" && key != "on" && key != "off" && key != "k0")
      throw ParseError("unknown sparse field '" + key + "'");
    if (fields.contains(key)) throw ParseError("duplicate sparse field '" + key + "'");
    fields[key] = parse_uint(item.substr(eq + 1), key);
    body = comma == std::string_view::npos ? std::string_view() : body.substr(comma + 1);
  }
  for (const char* key : {"b", "on", "off"})
    if (!fields.contains(key)) throw ParseError(std::string("sparse point missing field '") + key + "'");
  if (fields["b"] < 2 || fields["b"] > 0xffffffffULL) throw ParseError("sparse base b must be >= 2");
  if (fields["on"] >= std::uint64_t(radix.value()) || fields["off"] >= std::uint64_t(radix.value()))
    throw ParseError("sparse digit out of range for radix " + std::to_string(radix.value()));
  SparsePowers sp;
  sp.base = static_cast<std::uint32_t>(fields["b"]);
  sp.on = static_cast<Digit>(fields["on"]);
  sp.off = static_cast<Digit>(fields["off"]);
  if (fields.contains("k0")) {
    if (fields["k0"] > 64) throw ParseError("sparse k0 too large");
    sp.first_exponent = static_cast<std::uint32_t>(fields["k0"]);
  }
  return DigitStream::sparse(radix, sp);
}

DigitStream parse_digits(std::string_view text, std::optional<Radix> radix) {
  std::string_view body = text.substr(2);  // after "0."
  auto underscore = body.rfind('_');
  if (underscore != std::string_view::npos) {
    const std::uint64_t base = parse_uint(body.substr(underscore + 1), "radix suffix");
    if (base < 2 || base > std::uint64_t(Radix::kMax))
      throw ParseError("radix suffix must lie in [2, " + std::to_string(Radix::kMax) + "]");
    const Radix suffix(static_cast<int>(base));
    if (radix && *radix != suffix)
      throw ParseError("radix suffix _" + std::to_string(suffix.value()) + " disagrees with radix " +
                       std::to_string(radix->value()));
    radix = suffix;
    body = body.substr(0, underscore);
  }
  const Radix r = require(radix, text);
  DigitWord pre, per{0};
  auto open = body.find('(');
  if (open == std::string_view::npos) {
    pre = parse_word(body, r);
  } else {
    if (body.back() != ')' || body.find(')') != body.size() - 1 || body.find('(', open + 1) != std::string_view::npos)
      throw ParseError("malformed period in '" + std::string(text) + "'");
    pre = parse_word(body.substr(0, open), r);
    per = parse_word(body.substr(open + 1, body.size() - open - 2), r);
    if (per.empty()) throw ParseError("empty period in '" + std::string(text) + "'");
  }
  return DigitStream::periodic(r, std::move(pre), std::move(per));
}

}  // namespace

DigitStream parse_point(std::string_view text, std::optional<Radix> radix) {
  if (text.starts_with("sparse:")) return parse_sparse(text.substr(7), text, require(radix, text));
  if (text.starts_with("0.")) return parse_digits(text, radix);
  const Radix r = require(radix, text);
  const Rational x = parse_rational(text);
  if (x < 0 || x > 1) throw ParseError("point " + std::string(text) + " outside [0,1]");
  return digits_of(x, r);
}

std::string format_point(const DigitStream& s) {
  if (const auto* ep = s.periodic_body())
    return "0." + spell(ep->preperiod) + "(" + spell(ep->period) + ")_" + std::to_string(s.radix().value());
  const auto& sp = *s.sparse_body();
  std::string out = "sparse:b=" + std::to_string(sp.base) + ",on=" + std::to_string(int(sp.on)) +
                    ",off=" + std::to_string(int(sp.off));
  if (sp.first_exponent != 0) out += ",k0=" + std::to_string(sp.first_exponent);
  return out;
}

}  // namespace takagi
