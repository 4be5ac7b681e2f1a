#pragma once

#include <compare>
#include <cstdint>

namespace takagi {

using Digit = std::uint8_t;

/// Integer base r >= 2. Capped at 36 so digits have a one-character
/// spelling (0-9, a-z) in the point grammar.
class Radix {
 public:
  static constexpr int kMax = 36;

  explicit Radix(int r);

  int value() const { return r_; }
  bool is_odd() const { return (r_ & 1) != 0; }
  bool is_even() const { return !is_odd(); }
  Digit max_digit() const { return static_cast<Digit>(r_ - 1); }

  /// True iff d == (r-1)/2, which only happens for odd r.
  bool is_middle(Digit d) const { return 2 * int(d) == r_ - 1; }

  /// +1 below (r-1)/2, -1 above, 0 on the middle digit.
  int digit_sign(Digit d) const {
    int twice = 2 * int(d);
    return twice < r_ - 1 ? 1 : (twice > r_ - 1 ? -1 : 0);
  }

  friend auto operator<=>(const Radix&, const Radix&) = default;

 private:
  int r_;
};

}  // namespace takagi
