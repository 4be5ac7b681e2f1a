#pragma once

// Textual point grammar:
//
//   p/q                             rational in [0,1] (also a bare integer 0 or 1)
//   0.<digits>(<period>)_<r>        explicit base-r digits; "(<period>)" may be
//                                   omitted, meaning period 0
//   sparse:b=<int>,on=<d>,off=<d>[,k0=<int>]
//                                   sparse-powers generator, k0 defaults to 0
//
// Digits are spelled 0-9 then a-z. format_point emits the canonical digit
// form, which parses back to an equal stream.

#include <optional>
#include <string>
#include <string_view>

#include "takagi/digits.hpp"

namespace takagi {

/// `radix` supplies the base for the rational and sparse forms; for the
/// digit form it must agree with the "_r" suffix when given.
DigitStream parse_point(std::string_view text, std::optional<Radix> radix);

std::string format_point(const DigitStream& s);

}  // namespace takagi
