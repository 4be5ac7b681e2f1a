#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <exception>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "takagi/classify.hpp"
#include "takagi/error.hpp"
#include "takagi/eval.hpp"
#include "takagi/fractal.hpp"
#include "takagi/point.hpp"

namespace takagi::cli {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "1";

json rat(const Rational& x) { return {{"num", x.get_num().get_str()}, {"den", x.get_den().get_str()}}; }

json enclosure(const Enclosure& e) { return {{"lo", rat(e.lo)}, {"hi", rat(e.hi)}}; }

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string> header) { row_strings(header); }

  template <typename... T>
  void row(const T&... fields) {
    std::vector<std::string> cells{cell(fields)...};
    row_strings(cells);
  }

  std::string str() const { return text_.str(); }

 private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(double v) { return num(v); }
  static std::string cell(const Integer& v) { return v.get_str(); }
  template <typename I, typename = std::enable_if_t<std::is_integral_v<I>>>
  static std::string cell(I v) {
    return std::to_string(v);
  }

  template <typename C>
  void row_strings(const C& cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) text_ << ',';
      first = false;
      if (c.find_first_of(",\"\n") == std::string::npos) {
        text_ << c;
      } else {
        text_ << '"';
        for (char ch : c) text_ << (ch == '"' ? "\"\"" : std::string(1, ch));
        text_ << '"';
      }
    }
    text_ << '\n';
  }

  std::ostringstream text_;
};

struct Common {
  std::string format = "json";
  std::string output;
  std::uint64_t lookahead_cap = kDefaultLookaheadCap;
};

struct PointArgs {
  int radix = 0;
  std::string point;

  DigitStream stream() const {
    std::optional<Radix> r;
    if (radix != 0) r = Radix(radix);
    return parse_point(point, r);
  }
};

Side parse_side(const std::string& s) { return s == "left" ? Side::Left : Side::Right; }
Sign parse_sign(const std::string& s) { return s == "minus" ? Sign::Minus : Sign::Plus; }

std::string point_class(PointClass c) {
  switch (c) {
    case PointClass::InD: return "D";
    case PointClass::InDTilde: return "DTilde";
    case PointClass::Generic: return "Generic";
  }
  return "Generic";
}

json verdict_json(const Verdict& v) {
  json j{{"result", to_string(v.result)}, {"certainty", v.certified() ? "Certified" : "Heuristic"}};
  if (v.heuristic) {
    j["depth"] = v.heuristic->depth;
    j["tail_window_min"] = v.heuristic->tail_window_min;
    j["tail_window_max"] = v.heuristic->tail_window_max;
  }
  return j;
}

// Runs f(i) for i < count on up to default_threads() workers. The first
// failure in index order is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f) {
  const std::size_t workers = std::min<std::size_t>(default_threads(), count);
  std::vector<std::exception_ptr> errors(count);
  auto body = [&](std::size_t w) {
    for (std::size_t i = w; i < count; i += workers) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body, w);
  if (workers > 0) body(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void add_point_options(CLI::App* sub, PointArgs& p, bool radix_required = false) {
  auto* opt = sub->add_option("--radix,-r", p.radix, "Base r in [2, 36]")->check(CLI::Range(2, 36));
  if (radix_required) opt->required();
  sub->add_option("--point,-x", p.point, "p/q, 0.<pre>(<per>)_r or sparse:b=..,on=..,off=..[,k0=..]")->required();
}

void add_side(CLI::App* sub, std::string& side) {
  sub->add_option("--side", side, "left or right")->required()->check(CLI::IsMember({"left", "right"}));
}

void add_sign(CLI::App* sub, std::string& sign, bool required = true) {
  auto* o = sub->add_option("--sign", sign, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));
  if (required) o->required();
}

std::vector<DigitWord> parse_letters(const std::vector<std::string>& items, Radix radix) {
  std::vector<DigitWord> out;
  for (const auto& w : items) out.push_back(parse_word(w, radix));
  return out;
}

struct Document {
  json doc;
  std::string csv;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Takagi-Van der Waerden functions: exact evaluation, infinite-derivative criteria, fractal sets"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "takagi 0.1.0");

  Common common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--output,-o", common.output, "Write the document to this file instead of stdout");
  app.add_option("--lookahead-cap", common.lookahead_cap, "Digit lookahead cap for middle-digit runs")
      ->capture_default_str();

  Document result;
  std::function<void()> action;

  // eval
  PointArgs eval_point;
  bool eval_exact_flag = false;
  Index eval_depth = 0;
  auto* eval = app.add_subcommand("eval", "Evaluate f_r at a point (exact or enclosure).\n"
                                          "CSV: point,radix,mode,terms,lo_num,lo_den,hi_num,hi_den");
  add_point_options(eval, eval_point);
  auto* exact_opt = eval->add_flag("--exact", eval_exact_flag, "Exact rational value");
  eval->add_option("--depth,-N", eval_depth, "Number of series terms for an enclosure")
      ->check(CLI::PositiveNumber)
      ->excludes(exact_opt);
  eval->callback([&] {
    action = [&] {
      const DigitStream s = eval_point.stream();
      const auto x = value_of(s);
      json doc{{"schema", kSchema}, {"command", "eval"}, {"radix", s.radix().value()}, {"point", format_point(s)}};
      Csv csv{"point", "radix", "mode", "terms", "lo_num", "lo_den", "hi_num", "hi_den"};
      const bool exact = eval_exact_flag || (eval_depth == 0 && x);
      if (exact) {
        if (!x) throw DomainError("--exact needs a rational point; use --depth for generator points");
        const Rational v = eval_exact(*x, s.radix());
        doc["x"] = rat(*x);
        doc["mode"] = "exact";
        doc["value"] = rat(v);
        doc["approx"] = to_double(v);
        csv.row(format_point(s), s.radix().value(), "exact", "", v.get_num(), v.get_den(), v.get_num(), v.get_den());
      } else {
        const Index N = eval_depth == 0 ? 64 : eval_depth;
        const Enclosure e = eval_partial(s, N);
        if (x) doc["x"] = rat(*x);
        doc["mode"] = "enclosure";
        doc["terms"] = N;
        doc["enclosure"] = enclosure(e);
        doc["approx"] = to_double((e.lo + e.hi) / 2);
        csv.row(format_point(s), s.radix().value(), "enclosure", N, e.lo.get_num(), e.lo.get_den(), e.hi.get_num(),
                e.hi.get_den());
      }
      result = {doc, csv.str()};
    };
  });

  // classify
  int cls_radix = 0;
  std::vector<std::string> cls_points;
  unsigned cls_depth = 4;
  auto* cls = app.add_subcommand("classify", "One-sided infinite-derivative verdicts for one or more points.\n"
                                             "CSV: point,class,side,result,certainty,tail_window_min,tail_window_max");
  cls->add_option("--radix,-r", cls_radix, "Base r in [2, 36]")->check(CLI::Range(2, 36));
  cls->add_option("--point,-x", cls_points, "Point spec; repeatable")->required();
  cls->add_option("--depth", cls_depth, "Heuristic digit horizon 10^depth for generator points")
      ->check(CLI::Range(1u, kMaxHeuristicDepth))
      ->capture_default_str();
  cls->callback([&] {
    action = [&] {
      const ClassifyOptions opts{common.lookahead_cap};
      std::vector<DigitStream> streams;
      for (const auto& p : cls_points) streams.push_back(PointArgs{cls_radix, p}.stream());
      std::vector<VerdictPair> verdicts(streams.size());
      parallel_for(streams.size(), [&](std::size_t i) { verdicts[i] = classify(streams[i], cls_depth, opts); });

      json rows = json::array();
      Csv csv{"point", "class", "side", "result", "certainty", "tail_window_min", "tail_window_max"};
      for (std::size_t i = 0; i < streams.size(); ++i) {
        const std::string pt = format_point(streams[i]);
        const std::string pc = point_class(classify_point(streams[i]));
        rows.push_back({{"point", pt},
                        {"class", pc},
                        {"left", verdict_json(verdicts[i].left)},
                        {"right", verdict_json(verdicts[i].right)}});
        for (const Verdict* v : {&verdicts[i].left, &verdicts[i].right}) {
          const std::string lo = v->heuristic ? num(v->heuristic->tail_window_min) : "";
          const std::string hi = v->heuristic ? num(v->heuristic->tail_window_max) : "";
          csv.row(pt, pc, to_string(v->side), to_string(v->result), v->certified() ? "Certified" : "Heuristic", lo, hi);
        }
      }
      result = {json{{"schema", kSchema}, {"command", "classify"}, {"results", rows}}, csv.str()};
    };
  });

  // signs
  PointArgs signs_point;
  Index signs_count = 60;
  auto* signs = app.add_subcommand("signs", "Derivative signs g'_n and partial sums S_n.\nCSV: n,digit,sign,partial_sum");
  add_point_options(signs, signs_point);
  signs->add_option("--count,-n", signs_count, "Number of digits")->check(CLI::PositiveNumber)->capture_default_str();
  signs->callback([&] {
    action = [&] {
      const DigitStream s = signs_point.stream();
      const DerivTrace t = deriv_signs(s, signs_count, ClassifyOptions{common.lookahead_cap});
      Csv csv{"n", "digit", "sign", "partial_sum"};
      json digits = json::array();
      for (Index n = 1; n <= signs_count; ++n) {
        digits.push_back(s.digit(n));
        csv.row(n, int(s.digit(n)), t.signs[n - 1], t.partial_sums[n - 1]);
      }
      json doc{{"schema", kSchema},         {"command", "signs"},
               {"radix", s.radix().value()}, {"point", format_point(s)},
               {"digits", digits},          {"signs", t.signs},
               {"partial_sums", t.partial_sums}, {"below_middle", t.below_middle},
               {"above_middle", t.above_middle}};
      result = {doc, csv.str()};
    };
  });

  // criterion
  PointArgs crit_point;
  std::string crit_side, crit_sign;
  std::size_t crit_count = 100;
  auto* crit = app.add_subcommand("criterion", "Criterion sequence for one (side, sign).\nCSV: anchor,sum_part,gap,value");
  add_point_options(crit, crit_point);
  add_side(crit, crit_side);
  add_sign(crit, crit_sign);
  crit->add_option("--count,-n", crit_count, "Number of terms")->check(CLI::PositiveNumber)->capture_default_str();
  crit->callback([&] {
    action = [&] {
      const DigitStream s = crit_point.stream();
      const Side side = parse_side(crit_side);
      const Sign sign = parse_sign(crit_sign);
      const auto terms = criterion_sequence(s, side, sign, crit_count, ClassifyOptions{common.lookahead_cap});
      Csv csv{"anchor", "sum_part", "gap", "value"};
      json list = json::array();
      for (const auto& t : terms) {
        list.push_back({{"anchor", t.anchor}, {"sum_part", t.sum_part}, {"gap", t.gap}, {"value", t.value}});
        csv.row(t.anchor, t.sum_part, t.gap, t.value);
      }
      json doc{{"schema", kSchema},
               {"command", "criterion"},
               {"radix", s.radix().value()},
               {"point", format_point(s)},
               {"side", to_string(side)},
               {"sign", to_string(sign)},
               {"anchor_kind", to_string(criterion_anchor(side, sign))},
               {"terms", list}};
      result = {doc, csv.str()};
    };
  });

  // probe
  PointArgs probe_point;
  std::string probe_side;
  std::size_t probe_steps = 30;
  Index probe_precision = 0;
  auto* probe = app.add_subcommand("probe", "Difference quotients along the d_n ladder.\n"
                                            "CSV: step,target_num,target_den,h_lo_num,h_lo_den,h_hi_num,h_hi_den,"
                                            "q_lo_num,q_lo_den,q_hi_num,q_hi_den");
  add_point_options(probe, probe_point);
  add_side(probe, probe_side);
  probe->add_option("--steps", probe_steps, "Ladder steps")->check(CLI::PositiveNumber)->capture_default_str();
  probe->add_option("--precision", probe_precision, "Series terms for generator points (0 = automatic)");
  probe->callback([&] {
    action = [&] {
      const DigitStream s = probe_point.stream();
      const Side side = parse_side(probe_side);
      const auto steps = quotient_probe(s, side, probe_steps, probe_precision, ClassifyOptions{common.lookahead_cap});
      Csv csv{"step",     "target_num", "target_den", "h_lo_num", "h_lo_den", "h_hi_num",
              "h_hi_den", "q_lo_num",   "q_lo_den",   "q_hi_num", "q_hi_den"};
      json list = json::array();
      for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& st = steps[i];
        list.push_back({{"target", rat(st.target)},
                        {"h", enclosure(st.h)},
                        {"quotient", enclosure(st.quotient)},
                        {"quotient_approx", {to_double(st.quotient.lo), to_double(st.quotient.hi)}}});
        csv.row(i + 1, st.target.get_num(), st.target.get_den(), st.h.lo.get_num(), st.h.lo.get_den(),
                st.h.hi.get_num(), st.h.hi.get_den(), st.quotient.lo.get_num(), st.quotient.lo.get_den(),
                st.quotient.hi.get_num(), st.quotient.hi.get_den());
      }
      json doc{{"schema", kSchema},          {"command", "probe"},
               {"radix", s.radix().value()}, {"point", format_point(s)},
               {"side", to_string(side)},   {"steps", list}};
      result = {doc, csv.str()};
    };
  });

  // fractal
  auto* fractal = app.add_subcommand("fractal", "Digit-block fractal sets A_n^+-");
  fractal->require_subcommand(1);
  fractal->fallthrough();
  int fr_radix = 0;
  unsigned fr_n = 3;
  std::string fr_sign = "plus";
  unsigned fr_depth = 2;
  std::uint64_t fr_cap = kDefaultIntervalCap;
  auto add_fr_common = [&](CLI::App* sub) {
    sub->add_option("--radix,-r", fr_radix, "Base r in [2, 36]")->required()->check(CLI::Range(2, 36));
    sub->add_option("--n", fr_n, "Odd block length >= 3")->capture_default_str();
  };

  auto* fenum = fractal->add_subcommand("enum", "Enumerate B_n^+-.\nCSV: word");
  add_fr_common(fenum);
  add_sign(fenum, fr_sign, false);
  fenum->callback([&] {
    action = [&] {
      const Radix r(fr_radix);
      const WordSet B = enum_B(fr_n, r, parse_sign(fr_sign));
      Csv csv{"word"};
      json words = json::array();
      for (const auto& w : B.words) {
        words.push_back(spell(w));
        csv.row(spell(w));
      }
      json doc{{"schema", kSchema},  {"command", "fractal enum"},
               {"radix", fr_radix},  {"n", fr_n},
               {"sign", fr_sign},    {"count", B.words.size()},
               {"formula_count", count_B(fr_n, r).get_str()}, {"words", words}};
      result = {doc, csv.str()};
    };
  });

  auto* fifs = fractal->add_subcommand("ifs", "Depth-K interval approximation.\nCSV: lo_num,lo_den,hi_num,hi_den");
  add_fr_common(fifs);
  add_sign(fifs, fr_sign, false);
  fifs->add_option("--depth,-K", fr_depth, "IFS depth K")->check(CLI::PositiveNumber)->capture_default_str();
  fifs->add_option("--cap", fr_cap, "Interval cap")->capture_default_str();
  fifs->callback([&] {
    action = [&] {
      const IntervalSet set = ifs_approx(fr_n, Radix(fr_radix), parse_sign(fr_sign), fr_depth, fr_cap);
      Csv csv{"lo_num", "lo_den", "hi_num", "hi_den"};
      json list = json::array();
      for (std::size_t i = 0; i < set.size(); ++i) {
        const auto [lo, hi] = set.interval(i);
        list.push_back({{"lo", rat(lo)}, {"hi", rat(hi)}});
        csv.row(lo.get_num(), lo.get_den(), hi.get_num(), hi.get_den());
      }
      json doc{{"schema", kSchema}, {"command", "fractal ifs"}, {"radix", fr_radix}, {"n", fr_n},
               {"sign", fr_sign},   {"depth", fr_depth},        {"count", set.size()}, {"intervals", list}};
      result = {doc, csv.str()};
    };
  });

  std::vector<unsigned> dims_n;
  auto* fdims = fractal->add_subcommand("dims", "Similarity dimension and lower bound per n.\n"
                                                "CSV: n,count,exact_ratio,lemma_bound");
  fdims->add_option("--radix,-r", fr_radix, "Base r in [2, 36]")->required()->check(CLI::Range(2, 36));
  fdims->add_option("--n", dims_n, "Odd block lengths; repeatable")->required();
  add_sign(fdims, fr_sign, false);
  fdims->callback([&] {
    action = [&] {
      Csv csv{"n", "count", "exact_ratio", "lemma_bound"};
      json rows = json::array();
      for (unsigned n : dims_n) {
        const DimensionBounds b = dim_bounds(n, Radix(fr_radix), parse_sign(fr_sign));
        rows.push_back(
            {{"n", n}, {"count", b.count.get_str()}, {"exact_ratio", b.exact_ratio}, {"lemma_bound", b.lemma_bound}});
        csv.row(n, b.count, b.exact_ratio, b.lemma_bound);
      }
      json doc{{"schema", kSchema}, {"command", "fractal dims"}, {"radix", fr_radix}, {"sign", fr_sign}};
      doc["rows"] = rows;
      if (rows.size() == 1) {
        doc["count"] = rows[0]["count"];
        doc["exact_ratio"] = rows[0]["exact_ratio"];
        doc["lemma_bound"] = rows[0]["lemma_bound"];
      }
      result = {doc, csv.str()};
    };
  });

  std::vector<unsigned> box_m;
  auto* fbox = fractal->add_subcommand("boxdim", "Box-counting slope of a depth-K approximation.\nCSV: m,boxes");
  add_fr_common(fbox);
  add_sign(fbox, fr_sign, false);
  fbox->add_option("--depth,-K", fr_depth, "IFS depth K")->check(CLI::PositiveNumber)->capture_default_str();
  fbox->add_option("--m", box_m, "Grid exponents (default 1..nK)");
  fbox->add_option("--cap", fr_cap, "Interval cap")->capture_default_str();
  fbox->callback([&] {
    action = [&] {
      const Radix r(fr_radix);
      const Sign sign = parse_sign(fr_sign);
      const IntervalSet set = ifs_approx(fr_n, r, sign, fr_depth, fr_cap);
      std::vector<unsigned> ms = box_m;
      if (ms.empty())
        for (unsigned m = 1; m <= fr_n * fr_depth; ++m) ms.push_back(m);
      const BoxDimension bd = box_count_dim(set, ms);
      Csv csv{"m", "boxes"};
      json counts = json::array();
      for (const auto& c : bd.counts) {
        counts.push_back({{"m", c.m}, {"boxes", c.boxes}});
        csv.row(c.m, c.boxes);
      }
      json doc{{"schema", kSchema},
               {"command", "fractal boxdim"},
               {"radix", fr_radix},
               {"n", fr_n},
               {"sign", fr_sign},
               {"depth", fr_depth},
               {"slope", bd.slope},
               {"exact_ratio", dim_bounds(fr_n, r, sign).exact_ratio},
               {"counts", counts}};
      result = {doc, csv.str()};
    };
  });

  std::vector<std::string> wit_pre, wit_per;
  std::size_t wit_steps = 30;
  auto* fwit = fractal->add_subcommand("witness", "Point of A_n^+- from a block address, with verdicts and probes.\n"
                                                  "CSV: side,step,q_lo_num,q_lo_den,q_hi_num,q_hi_den");
  add_fr_common(fwit);
  add_sign(fwit, fr_sign, false);
  fwit->add_option("--pre", wit_pre, "Preperiod letters (words of length n)")->delimiter(',');
  fwit->add_option("--period", wit_per, "Period letters (words of length n)")->delimiter(',')->required();
  fwit->add_option("--steps", wit_steps, "Ladder steps per side")->capture_default_str();
  fwit->callback([&] {
    action = [&] {
      const Radix r(fr_radix);
      const Sign sign = parse_sign(fr_sign);
      const auto pre = parse_letters(wit_pre, r);
      const auto per = parse_letters(wit_per, r);
      const DigitStream s = membership_witness(fr_n, r, sign, pre, per);
      const ClassifyOptions opts{common.lookahead_cap};
      const VerdictPair v = certify(s, opts);
      Csv csv{"side", "step", "q_lo_num", "q_lo_den", "q_hi_num", "q_hi_den"};
      json probes;
      for (Side side : {Side::Left, Side::Right}) {
        json list = json::array();
        const auto steps = quotient_probe(s, side, wit_steps, 0, opts);
        for (std::size_t i = 0; i < steps.size(); ++i) {
          list.push_back(enclosure(steps[i].quotient));
          csv.row(to_string(side), i + 1, steps[i].quotient.lo.get_num(), steps[i].quotient.lo.get_den(),
                  steps[i].quotient.hi.get_num(), steps[i].quotient.hi.get_den());
        }
        probes[to_string(side)] = list;
      }
      json doc{{"schema", kSchema},
               {"command", "fractal witness"},
               {"radix", fr_radix},
               {"n", fr_n},
               {"sign", fr_sign},
               {"point", format_point(s)},
               {"x", rat(*value_of(s))},
               {"left", verdict_json(v.left)},
               {"right", verdict_json(v.right)},
               {"quotients", probes}};
      result = {doc, csv.str()};
    };
  });

  // sample
  int smp_radix = 2;
  std::uint64_t smp_digits = 400, smp_samples = 100000, smp_seed = 1;
  unsigned smp_threads = 0;
  auto* smp = app.add_subcommand("sample", "Monte Carlo statistics of S_N for uniform digits.\n"
                                           "CSV: radix,digits,samples,seed,mean,variance,tail_c2,tail_c3,tail_c4");
  smp->add_option("--radix,-r", smp_radix, "Base r in [2, 36]")->required()->check(CLI::Range(2, 36));
  smp->add_option("--digits,-N", smp_digits, "Word length N")->check(CLI::PositiveNumber)->capture_default_str();
  smp->add_option("--samples", smp_samples, "Sample count")->check(CLI::PositiveNumber)->capture_default_str();
  smp->add_option("--seed", smp_seed, "Generator seed")->capture_default_str();
  smp->add_option("--threads", smp_threads, "Worker threads (0 = TAKAGI_THREADS or all cores)");
  smp->callback([&] {
    action = [&] {
      const auto st = sample_null_measure(Radix(smp_radix), smp_digits, smp_samples, smp_seed, smp_threads);
      Csv csv{"radix", "digits", "samples", "seed", "mean", "variance", "tail_c2", "tail_c3", "tail_c4"};
      csv.row(smp_radix, st.digits, st.samples, smp_seed, st.mean, st.variance, st.tail_fraction[0],
              st.tail_fraction[1], st.tail_fraction[2]);
      json doc{{"schema", kSchema},
               {"command", "sample"},
               {"radix", smp_radix},
               {"digits", st.digits},
               {"samples", st.samples},
               {"seed", smp_seed},
               {"generator", "splitmix64, sample i seeded with seed ^ i"},
               {"mean", st.mean},
               {"variance", st.variance},
               {"tail_fraction", {{"2", st.tail_fraction[0]}, {"3", st.tail_fraction[1]}, {"4", st.tail_fraction[2]}}}};
      result = {doc, csv.str()};
    };
  });

  auto fail = [&](const char* kind, const std::string& message, int code) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
    return code;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail("parse", e.what(), 2);
  }

  try {
    action();
  } catch (const ParseError& e) {
    return fail("parse", e.what(), 2);
  } catch (const DomainError& e) {
    return fail("validation", e.what(), 2);
  } catch (const CapExceeded& e) {
    return fail("cap", e.what(), 1);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }

  const std::string text = common.format == "csv" ? result.csv : result.doc.dump(2) + "\n";
  if (common.output.empty()) {
    out << text;
  } else {
    std::ofstream file(common.output, std::ios::binary);
    if (!file) return fail("io", "cannot open " + common.output, 2);
    file << text;
  }
  return 0;
}

}  // namespace takagi::cli
