#include "takagi/classify.hpp"

#include <algorithm>
#include <cmath>

#include "takagi/error.hpp"
#include "takagi/point.hpp"

namespace takagi {

namespace {

// g'_n on demand. A middle run shares one lookahead, cached as the
// half-open range [run_from_, next_) whose digits are all middle.
class SignWalker {
 public:
  SignWalker(const DigitStream& s, std::uint64_t cap) : s_(s), radix_(s.radix()), cap_(cap) {}

  int sign(Index n) {
    const int sg = radix_.digit_sign(s_.digit(n));
    if (sg != 0) return sg;
    if (!(run_from_ <= n && n < next_)) {
      auto k = next_index(s_, DigitCondition::NotMiddle, n);
      if (!k) throw DomainError("point lies in D~: no non-middle digit after position " + std::to_string(n));
      if (*k - n > cap_)
        throw CapExceeded("lookahead from digit " + std::to_string(n) + " exceeds cap of " + std::to_string(cap_));
      run_from_ = n;
      next_ = *k;
    }
    return radix_.digit_sign(s_.digit(next_));
  }

 private:
  const DigitStream& s_;
  Radix radix_;
  std::uint64_t cap_;
  Index run_from_ = 1;
  Index next_ = 0;
};

void require_generic(const DigitStream& s, const char* what) {
  if (classify_point(s) != PointClass::Generic) throw DomainError(std::string(what) + " needs a point outside D u D~");
}

DigitCondition condition_of(IndexKind kind) {
  switch (kind) {
    case IndexKind::NotMiddle: return DigitCondition::NotMiddle;
    case IndexKind::NotZero: return DigitCondition::NotZero;
    case IndexKind::NotMax: return DigitCondition::NotMax;
  }
  return DigitCondition::NotMiddle;
}

double log_radix(Index gap, Radix radix) {
  return gap == 1 ? 0.0 : std::log(double(gap)) / std::log(double(radix.value()));
}

// anchors[0..k] -> k terms.
std::vector<CriterionTerm> terms_from_anchors(const DigitStream& s, Sign sign, const std::vector<Index>& anchors,
                                              const ClassifyOptions& opts) {
  std::vector<CriterionTerm> out;
  if (anchors.size() < 2) return out;
  out.reserve(anchors.size() - 1);
  SignWalker walker(s, opts.lookahead_cap);
  std::int64_t sum = 0;
  Index n = 0;
  for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
    while (n < anchors[i]) sum += walker.sign(++n);
    CriterionTerm t;
    t.anchor = anchors[i];
    t.sum_part = sum;
    t.gap = anchors[i + 1] - anchors[i];
    const double adjust = double(t.gap) - log_radix(t.gap, s.radix());
    t.value = sign == Sign::Plus ? double(sum) - adjust : double(sum) + adjust;
    out.push_back(t);
  }
  return out;
}

struct Window {
  bool empty = true;
  double min = 0.0;
  double max = 0.0;
};

// Last quarter (at least one term) of the terms whose next anchor is <= limit.
Window tail_window(const std::vector<CriterionTerm>& terms, Index limit) {
  auto end = std::find_if(terms.begin(), terms.end(), [&](const CriterionTerm& t) { return t.anchor + t.gap > limit; });
  const std::size_t size = static_cast<std::size_t>(end - terms.begin());
  Window w;
  if (size == 0) return w;
  const std::size_t take = (size + 3) / 4;
  w.empty = false;
  w.min = w.max = terms[size - take].value;
  for (std::size_t i = size - take; i < size; ++i) {
    w.min = std::min(w.min, terms[i].value);
    w.max = std::max(w.max, terms[i].value);
  }
  return w;
}

struct Trend {
  bool plus = false;
  bool minus = false;
  Window last;
};

Trend detect_trend(const std::vector<CriterionTerm>& terms, Index horizon) {
  std::vector<Window> windows;
  for (Index div : {8u, 4u, 2u, 1u}) windows.push_back(tail_window(terms, horizon / div));
  Trend trend;
  trend.last = windows.back();
  if (std::any_of(windows.begin(), windows.end(), [](const Window& w) { return w.empty; })) return trend;
  bool rising = true, falling = true;
  for (std::size_t i = 1; i < windows.size(); ++i) {
    rising = rising && windows[i].min > windows[i - 1].min;
    falling = falling && windows[i].max < windows[i - 1].max;
  }
  trend.plus = rising && windows.back().min > kTrendThreshold;
  trend.minus = falling && windows.back().max < -kTrendThreshold;
  return trend;
}

Verdict side_verdict(Side side, const Trend& plus, const Trend& minus, unsigned depth) {
  Verdict v;
  v.side = side;
  const Trend* report = &plus;
  if (plus.plus && !minus.minus) {
    v.result = DerivResult::PlusInfinity;
  } else if (minus.minus && !plus.plus) {
    v.result = DerivResult::MinusInfinity;
    report = &minus;
  }
  v.heuristic = HeuristicWindow{depth, report->last.min, report->last.max};
  return v;
}

Verdict certified(Side side, DerivResult result) {
  Verdict v;
  v.side = side;
  v.result = result;
  return v;
}

Enclosure divide_positive(const Enclosure& num, const Enclosure& den) {
  Rational a = num.lo / den.lo, b = num.lo / den.hi;
  Rational c = num.hi / den.lo, d = num.hi / den.hi;
  return {std::min({a, b, c, d}), std::max({a, b, c, d})};
}

// Number of radix digits needed so that r^-p <= h (h > 0).
Index digits_below(const Rational& h, Radix radix) {
  Index p = 0;
  Rational scaled = h;
  while (scaled < 1) {
    scaled *= radix.value();
    ++p;
  }
  return p;
}

}  // namespace

DigitStream phi_r_map(const DigitStream& s) {
  const Radix radix = s.radix();
  if (radix.is_even()) return s;
  if (classify_point(s) == PointClass::InDTilde) throw DomainError("phi_r is undefined on D~");
  if (const auto* ep = s.periodic_body()) {
    const std::size_t L = ep->preperiod.size(), P = ep->period.size();
    DigitWord ext = ep->preperiod;
    ext.insert(ext.end(), ep->period.begin(), ep->period.end());
    ext.insert(ext.end(), ep->period.begin(), ep->period.end());
    auto first = std::find_if(ep->period.begin(), ep->period.end(), [&](Digit d) { return !radix.is_middle(d); });
    Digit last = *first;
    for (std::size_t i = ext.size(); i-- > 0;) {
      if (radix.is_middle(ext[i]))
        ext[i] = last;
      else
        last = ext[i];
    }
    DigitWord pre(ext.begin(), ext.begin() + std::ptrdiff_t(L));
    DigitWord per(ext.begin() + std::ptrdiff_t(L), ext.begin() + std::ptrdiff_t(L + P));
    return DigitStream::periodic(radix, std::move(pre), std::move(per));
  }
  const auto& sp = *s.sparse_body();
  if (radix.is_middle(sp.on)) return DigitStream::periodic(radix, {}, {sp.off});
  if (radix.is_middle(sp.off)) return DigitStream::periodic(radix, {}, {sp.on});
  return s;
}

DerivTrace deriv_signs(const DigitStream& s, Index N, const ClassifyOptions& opts) {
  require_generic(s, "deriv_signs");
  DerivTrace trace;
  trace.signs.reserve(N);
  trace.partial_sums.reserve(N);
  SignWalker walker(s, opts.lookahead_cap);
  std::int64_t sum = 0;
  for (Index n = 1; n <= N; ++n) {
    const int sg = walker.sign(n);
    sum += sg;
    trace.signs.push_back(sg);
    trace.partial_sums.push_back(sum);
    const int raw = s.radix().digit_sign(s.digit(n));
    if (raw > 0) ++trace.below_middle;
    if (raw < 0) ++trace.above_middle;
  }
  return trace;
}

IndexSeq index_seq(const DigitStream& s, IndexKind kind, std::size_t count) {
  IndexSeq seq{kind, {}};
  seq.indices.reserve(count);
  Index at = 0;
  const auto cond = condition_of(kind);
  while (seq.indices.size() < count) {
    auto next = next_index(s, cond, at);
    if (!next) throw DomainError("index sequence " + to_string(kind) + " is finite for " + format_point(s));
    seq.indices.push_back(*next);
    at = *next;
  }
  return seq;
}

IndexKind criterion_anchor(Side side, Sign sign) {
  if (sign == Sign::Plus) return side == Side::Right ? IndexKind::NotMiddle : IndexKind::NotZero;
  return side == Side::Right ? IndexKind::NotMax : IndexKind::NotMiddle;
}

std::vector<CriterionTerm> criterion_sequence(const DigitStream& s, Side side, Sign sign, std::size_t count,
                                              const ClassifyOptions& opts) {
  require_generic(s, "criterion_sequence");
  const auto anchors = index_seq(s, criterion_anchor(side, sign), count + 1);
  return terms_from_anchors(s, sign, anchors.indices, opts);
}

std::vector<CriterionTerm> criterion_terms_upto(const DigitStream& s, Side side, Sign sign, Index horizon,
                                                const ClassifyOptions& opts) {
  require_generic(s, "criterion_terms_upto");
  const auto cond = condition_of(criterion_anchor(side, sign));
  std::vector<Index> anchors;
  for (auto a = next_index(s, cond, 0); a && *a <= horizon; a = next_index(s, cond, *a)) anchors.push_back(*a);
  return terms_from_anchors(s, sign, anchors, opts);
}

std::int64_t period_drift(const DigitStream& s, const ClassifyOptions& opts) {
  require_generic(s, "period_drift");
  const auto* ep = s.periodic_body();
  if (!ep) throw DomainError("period_drift needs an eventually periodic stream");
  SignWalker walker(s, opts.lookahead_cap);
  const Index L = ep->preperiod.size(), P = ep->period.size();
  std::int64_t drift = 0;
  for (Index n = L + 1; n <= L + P; ++n) drift += walker.sign(n);
  return drift;
}

VerdictPair certify(const DigitStream& s, const ClassifyOptions& opts) {
  if (!s.is_periodic()) throw DomainError("generator streams cannot be certified; use heuristic_verdict");
  switch (classify_point(s)) {
    case PointClass::InD:
      return {certified(Side::Left, DerivResult::MinusInfinity), certified(Side::Right, DerivResult::PlusInfinity)};
    case PointClass::InDTilde:
      return {certified(Side::Left, DerivResult::PlusInfinity), certified(Side::Right, DerivResult::MinusInfinity)};
    case PointClass::Generic: break;
  }
  const auto drift = period_drift(s, opts);
  const DerivResult result =
      drift > 0 ? DerivResult::PlusInfinity : (drift < 0 ? DerivResult::MinusInfinity : DerivResult::NotInfinite);
  return {certified(Side::Left, result), certified(Side::Right, result)};
}

VerdictPair heuristic_verdict(const DigitStream& s, unsigned depth, const ClassifyOptions& opts) {
  require_generic(s, "heuristic_verdict");
  if (depth < 1 || depth > kMaxHeuristicDepth)
    throw DomainError("heuristic depth must lie in [1, " + std::to_string(kMaxHeuristicDepth) + "]");
  Index horizon = 1;
  for (unsigned i = 0; i < depth; ++i) horizon *= 10;
  auto trend = [&](Side side, Sign sign) {
    return detect_trend(criterion_terms_upto(s, side, sign, horizon, opts), horizon);
  };
  const Trend right_plus = trend(Side::Right, Sign::Plus), right_minus = trend(Side::Right, Sign::Minus);
  const Trend left_plus = trend(Side::Left, Sign::Plus), left_minus = trend(Side::Left, Sign::Minus);
  return {side_verdict(Side::Left, left_plus, left_minus, depth),
          side_verdict(Side::Right, right_plus, right_minus, depth)};
}

VerdictPair classify(const DigitStream& s, unsigned depth, const ClassifyOptions& opts) {
  if (s.is_periodic()) return certify(s, opts);
  return heuristic_verdict(s, depth, opts);
}

std::vector<ProbeStep> quotient_probe(const DigitStream& s, Side side, std::size_t steps, Index precision,
                                      const ClassifyOptions& opts) {
  const Radix radix = s.radix();
  const auto exact_x = value_of(s);
  std::optional<Rational> fx;
  if (exact_x) {
    if (side == Side::Right && *exact_x >= 1) throw DomainError("right probe needs x < 1");
    if (side == Side::Left && *exact_x <= 0) throw DomainError("left probe needs x > 0");
    fx = eval_exact(*exact_x, radix);
  }

  std::vector<ProbeStep> out;
  std::optional<Rational> previous;
  const Index max_level = 64 * Index(steps) + opts.lookahead_cap;
  for (Index j = 1; out.size() < steps; ++j) {
    if (j > max_level) throw CapExceeded("degenerate ladder: fewer than " + std::to_string(steps) + " distinct steps");
    Rational target = side == Side::Right ? next_grid_point(s, j, opts.lookahead_cap) : prev_grid_point(s, j);
    if (previous && *previous == target) continue;
    previous = target;

    ProbeStep step;
    step.target = target;
    const Rational f_target = eval_exact(target, radix);
    if (exact_x) {
      const Rational h = side == Side::Right ? target - *exact_x : *exact_x - target;
      step.h = Enclosure::exact(h);
      const Rational q = side == Side::Right ? (f_target - *fx) / h : (*fx - f_target) / h;
      step.quotient = Enclosure::exact(q);
    } else {
      // Rough step size first, then enough series terms for f(x).
      Index digits = j + 64;
      Enclosure x = point_enclosure(s, digits);
      Rational h_lo = side == Side::Right ? target - x.hi : x.lo - target;
      while (h_lo <= 0) {
        if (digits > 64 * max_level) throw CapExceeded("probe step too small to resolve");
        digits *= 2;
        x = point_enclosure(s, digits);
        h_lo = side == Side::Right ? target - x.hi : x.lo - target;
      }
      Index p = digits_below(h_lo, radix);
      Index N = precision ? precision : p + 64;
      x = point_enclosure(s, N + 16);
      step.h = side == Side::Right ? Enclosure{target - x.hi, target - x.lo} : Enclosure{x.lo - target, x.hi - target};
      const Enclosure F = eval_partial(s, N);
      const Enclosure num = side == Side::Right ? Enclosure{f_target - F.hi, f_target - F.lo}
                                                : Enclosure{F.lo - f_target, F.hi - f_target};
      step.quotient = divide_positive(num, step.h);
    }
    out.push_back(std::move(step));
  }
  return out;
}

Bracket component_bracket(const DigitStream& s, Index n) {
  require_generic(s, "component_bracket");
  const auto x = value_of(s);
  if (!x) throw DomainError("component_bracket needs a rational point");
  const Radix radix = s.radix();
  const Rational a = prev_grid_point(s, n);
  const Rational b = a + inv_pow(radix.value(), n - 1);
  const Rational fx = eval_exact(*x, radix);
  Bracket br;
  br.lower = (eval_exact(b, radix) - fx) / (b - *x);
  br.upper = (eval_exact(a, radix) - fx) / (a - *x);
  SignWalker walker(s, kDefaultLookaheadCap);
  br.partial_sum = 0;
  for (Index k = 1; k <= n; ++k) br.partial_sum += walker.sign(k);
  return br;
}

std::string to_string(Side side) { return side == Side::Left ? "left" : "right"; }
std::string to_string(Sign sign) { return sign == Sign::Plus ? "plus" : "minus"; }

std::string to_string(DerivResult result) {
  switch (result) {
    case DerivResult::PlusInfinity: return "PlusInfinity";
    case DerivResult::MinusInfinity: return "MinusInfinity";
    case DerivResult::NotInfinite: return "NotInfinite";
  }
  return "NotInfinite";
}

std::string to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::NotMiddle: return "i";
    case IndexKind::NotZero: return "n";
    case IndexKind::NotMax: return "p";
  }
  return "i";
}

}  // namespace takagi
