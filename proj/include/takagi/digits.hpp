#pragma once

// Base-r digit streams x = sum_{n>=1} eps_n r^-n.
//
// Two bodies are supported: eventually periodic words (exactly the
// expansions of rationals) and the sparse-powers generator
//
//   eps_n = on   if n = b^k for some k >= first_exponent
//   eps_n = off  otherwise
//
// Eventually periodic streams are kept canonical (minimal period, then
// minimal preperiod), so two streams compare equal iff their digit
// sequences are equal.

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "takagi/radix.hpp"
#include "takagi/rational.hpp"

namespace takagi {

using DigitWord = std::vector<Digit>;
using Index = std::uint64_t;

struct EventuallyPeriodic {
  DigitWord preperiod;
  DigitWord period;  // nonempty

  friend bool operator==(const EventuallyPeriodic&, const EventuallyPeriodic&) = default;
};

struct SparsePowers {
  std::uint32_t base = 10;
  Digit on = 0;
  Digit off = 1;
  std::uint32_t first_exponent = 0;

  friend bool operator==(const SparsePowers&, const SparsePowers&) = default;
};

class DigitStream {
 public:
  /// Validates digits and canonicalizes. Throws DomainError on an empty
  /// period or an out-of-range digit.
  static DigitStream periodic(Radix radix, DigitWord preperiod, DigitWord period);

  /// A generator with on == off collapses to the constant periodic stream.
  static DigitStream sparse(Radix radix, SparsePowers body);

  Radix radix() const { return radix_; }
  bool is_periodic() const { return std::holds_alternative<EventuallyPeriodic>(body_); }
  const EventuallyPeriodic* periodic_body() const { return std::get_if<EventuallyPeriodic>(&body_); }
  const SparsePowers* sparse_body() const { return std::get_if<SparsePowers>(&body_); }

  /// eps_n, n >= 1.
  Digit digit(Index n) const;

  friend bool operator==(const DigitStream&, const DigitStream&) = default;

 private:
  DigitStream(Radix radix, std::variant<EventuallyPeriodic, SparsePowers> body)
      : radix_(radix), body_(std::move(body)) {}

  Radix radix_;
  std::variant<EventuallyPeriodic, SparsePowers> body_;
};

enum class Tail { Zeros, MaxDigits };

/// Base-r expansion of x in [0,1]. Points of D get the all-zeros tail
/// unless `tail == Tail::MaxDigits`. x = 1 has only the all-(r-1)
/// expansion and x = 0 only the all-zeros one.
/// Throws DomainError outside [0,1], CapExceeded when preperiod + period
/// would exceed `max_states` digits.
DigitStream digits_of(const Rational& x, Radix radix, Tail tail = Tail::Zeros,
                      std::uint64_t max_states = 1'000'000);

/// eps_n; throws DomainError for n == 0.
Digit digit_at(const DigitStream& s, Index n);

/// sum_{k<=n} eps_k r^-k (the point x-hat_{n+1}).
Rational prefix_value(const DigitStream& s, Index n);

/// Exact value of an eventually periodic stream; nullopt for generators.
std::optional<Rational> value_of(const DigitStream& s);

enum class PointClass { InD, InDTilde, Generic };

PointClass classify_point(const DigitStream& s);

enum class DigitCondition {
  NotMiddle,  // eps != (r-1)/2
  NotZero,    // eps != 0
  NotMax,     // eps != r-1
};

bool satisfies(Radix radix, DigitCondition cond, Digit d);

/// Smallest j > after with eps_j satisfying `cond`, or nullopt when no
/// such j exists. Exact for both bodies; no scanning cap. Throws
/// CapExceeded if the answer does not fit in 64 bits.
std::optional<Index> next_index(const DigitStream& s, DigitCondition cond, Index after);

/// Digit word spelled with 0-9a-z.
std::string spell(std::span<const Digit> word);

/// Inverse of spell for radix r. Throws ParseError.
DigitWord parse_word(std::string_view text, Radix radix);

}  // namespace takagi
