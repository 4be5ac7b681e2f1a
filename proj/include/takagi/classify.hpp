#pragma once

// Derivative signs g'_n, the anchor sequences i_n / n_k / p_n and the
// infinite-derivative criteria built on them.
//
// For x outside D u D~ the sign g'_n(x) is +1 when eps_n < (r-1)/2, -1 when
// eps_n > (r-1)/2, and copies the sign of the next non-middle digit when
// eps_n = (r-1)/2. With S_n = sum_{k<=n} g'_k and gap = next anchor - anchor,
// the four one-sided criteria are
//
//   right +inf   anchors i_n (eps != (r-1)/2)   S - gap + log_r(gap) -> +inf
//   left  +inf   anchors n_k (eps != 0)         S - gap + log_r(gap) -> +inf
//   right -inf   anchors p_n (eps != r-1)       S + gap - log_r(gap) -> -inf
//   left  -inf   anchors i_n                    S + gap - log_r(gap) -> -inf
//
// Certification of eventually periodic points. For a rational generic point
// every anchor sequence is infinite with gaps bounded by the period length
// P, so each criterion value differs from S_anchor by at most P + log_r P.
// Past the preperiod the signs repeat with period P, so S_n grows like
// (n / P) * drift where drift is the sign sum over one period. Hence each
// +inf criterion holds iff drift > 0 and each -inf criterion iff drift < 0;
// drift == 0 leaves S bounded and no criterion holds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "takagi/digits.hpp"
#include "takagi/eval.hpp"

namespace takagi {

enum class Side { Left, Right };
enum class Sign { Plus, Minus };

struct DerivTrace {
  std::vector<int> signs;                  // g'_1 .. g'_N
  std::vector<std::int64_t> partial_sums;  // S_1 .. S_N
  std::uint64_t below_middle = 0;          // O_N
  std::uint64_t above_middle = 0;          // I_N
};

enum class IndexKind {
  NotMiddle,  // i_n
  NotZero,    // n_k
  NotMax,     // p_n
};

struct IndexSeq {
  IndexKind kind;
  std::vector<Index> indices;
};

struct CriterionTerm {
  Index anchor = 0;
  std::int64_t sum_part = 0;  // S at the anchor
  Index gap = 0;
  double value = 0.0;
};

enum class DerivResult { PlusInfinity, MinusInfinity, NotInfinite };

struct HeuristicWindow {
  unsigned depth = 0;  // digit horizon 10^depth
  double tail_window_min = 0.0;
  double tail_window_max = 0.0;
};

struct Verdict {
  Side side = Side::Right;
  DerivResult result = DerivResult::NotInfinite;
  std::optional<HeuristicWindow> heuristic;  // empty when certified

  bool certified() const { return !heuristic.has_value(); }
};

struct VerdictPair {
  Verdict left;
  Verdict right;
};

struct ClassifyOptions {
  std::uint64_t lookahead_cap = kDefaultLookaheadCap;
};

/// Every middle digit replaced by the next non-middle digit. Identity for
/// even r. Throws DomainError on a point of D~.
DigitStream phi_r_map(const DigitStream& s);

/// Signs g'_1..g'_N of a generic point. Throws DomainError for points of
/// D u D~, CapExceeded when a middle run is longer than the lookahead cap.
DerivTrace deriv_signs(const DigitStream& s, Index N, const ClassifyOptions& opts = {});

/// First `count` indices of the requested sequence. Throws DomainError when
/// the digit condition holds only finitely often.
IndexSeq index_seq(const DigitStream& s, IndexKind kind, std::size_t count);

/// Anchor kind for each (side, sign) criterion.
IndexKind criterion_anchor(Side side, Sign sign);

/// First `count` terms of the (side, sign) criterion.
std::vector<CriterionTerm> criterion_sequence(const DigitStream& s, Side side, Sign sign, std::size_t count,
                                              const ClassifyOptions& opts = {});

/// Every term whose next anchor is at most `horizon`.
std::vector<CriterionTerm> criterion_terms_upto(const DigitStream& s, Side side, Sign sign, Index horizon,
                                                const ClassifyOptions& opts = {});

/// Sum of g' over one period of a generic rational stream.
std::int64_t period_drift(const DigitStream& s, const ClassifyOptions& opts = {});

/// Certified one-sided verdicts: points of D give (-inf, +inf), points of
/// D~ give (+inf, -inf), rational generic points go through the drift
/// reduction above. Throws DomainError for generator streams.
VerdictPair certify(const DigitStream& s, const ClassifyOptions& opts = {});

/// Detector constants for heuristic_verdict.
inline constexpr double kTrendThreshold = 10.0;
inline constexpr unsigned kMaxHeuristicDepth = 7;

/// Finite-horizon reading of the criteria up to digit 10^depth. At the four
/// checkpoints 10^depth / 8, / 4, / 2, / 1 the last quarter of the terms
/// available so far forms a window. A +inf trend needs the final window
/// minimum above kTrendThreshold and the window minima strictly increasing;
/// -inf is the mirror image on the maxima. Anything else is NotInfinite.
VerdictPair heuristic_verdict(const DigitStream& s, unsigned depth, const ClassifyOptions& opts = {});

/// certify when possible, heuristic_verdict otherwise.
VerdictPair classify(const DigitStream& s, unsigned depth, const ClassifyOptions& opts = {});

struct ProbeStep {
  Rational target;     // x + h (right) or x - h (left); always rational
  Enclosure h;         // exact for rational x
  Enclosure quotient;  // (f(target) - f(x)) / (target - x)
};

/// Difference quotients along the right ladder h_j = d_j (next point of
/// D_j u D~_j above x) or the left ladder h_j = x - (last point of D_j below
/// x), consecutive duplicates removed. Works at points of D u D~ too.
/// `precision` is the number of series terms used for f(x) at generator
/// points; 0 selects p + 64 with h ~ r^-p.
std::vector<ProbeStep> quotient_probe(const DigitStream& s, Side side, std::size_t steps, Index precision = 0,
                                      const ClassifyOptions& opts = {});

/// Two-sided bracket around S_n on the component (a, b) of [0,1] \ D_n
/// containing a generic rational x:
///   (f(b) - f(x)) / (b - x) <= S_n <= (f(a) - f(x)) / (a - x).
struct Bracket {
  Rational lower;
  std::int64_t partial_sum;
  Rational upper;

  bool holds() const { return lower <= partial_sum && Rational(partial_sum) <= upper; }
};

Bracket component_bracket(const DigitStream& s, Index n);

std::string to_string(Side side);
std::string to_string(Sign sign);
std::string to_string(DerivResult result);
std::string to_string(IndexKind kind);

}  // namespace takagi
