#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "takagi/classify.hpp"
#include "takagi/error.hpp"
#include "takagi/eval.hpp"
#include "takagi/fractal.hpp"
#include "takagi/point.hpp"

namespace py = pybind11;
using namespace takagi;

namespace {

py::object to_py(const Integer& v) { return py::module_::import("builtins").attr("int")(v.get_str()); }

py::object to_py(const Rational& v) {
  return py::module_::import("fractions").attr("Fraction")(to_py(v.get_num()), to_py(v.get_den()));
}

py::tuple to_py(const Enclosure& e) { return py::make_tuple(to_py(e.lo), to_py(e.hi)); }

Rational from_py(const py::handle& x) {
  if (py::isinstance<py::str>(x)) return parse_rational(x.cast<std::string>());
  const std::string num = py::str(x.attr("numerator")), den = py::str(x.attr("denominator"));
  return make_rational(Integer(num), Integer(den));
}

// A point is either a grammar string or anything with numerator/denominator.
DigitStream stream_of(const py::handle& point, int radix) {
  if (py::isinstance<py::str>(point)) return parse_point(point.cast<std::string>(), Radix(radix));
  return digits_of(from_py(point), Radix(radix));
}

Side side_of(const std::string& s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw DomainError("side must be 'left' or 'right'");
}

Sign sign_of(const std::string& s) {
  if (s == "plus") return Sign::Plus;
  if (s == "minus") return Sign::Minus;
  throw DomainError("sign must be 'plus' or 'minus'");
}

py::dict verdict(const Verdict& v) {
  py::dict d;
  d["result"] = to_string(v.result);
  d["certainty"] = v.certified() ? "Certified" : "Heuristic";
  if (v.heuristic) {
    d["depth"] = v.heuristic->depth;
    d["tail_window_min"] = v.heuristic->tail_window_min;
    d["tail_window_max"] = v.heuristic->tail_window_max;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Takagi-Van der Waerden evaluation, derivative criteria and fractal sets";

  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DomainError& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  m.def("canonical", [](const py::object& point, int radix) { return format_point(stream_of(point, radix)); },
        py::arg("point"), py::arg("radix"), "Canonical spelling of a point.");

  m.def("point_class", [](const py::object& point, int radix) {
        switch (classify_point(stream_of(point, radix))) {
          case PointClass::InD: return "D";
          case PointClass::InDTilde: return "DTilde";
          default: return "Generic";
        }
      }, py::arg("point"), py::arg("radix"));

  m.def("eval_exact", [](const py::object& x, int radix) { return to_py(eval_exact(from_py(x), Radix(radix))); },
        py::arg("x"), py::arg("radix"), "Exact f_r(x) for rational x in [0, 1].");

  m.def("eval_partial", [](const py::object& point, int radix, Index terms) {
        return to_py(eval_partial(stream_of(point, radix), terms));
      }, py::arg("point"), py::arg("radix"), py::arg("terms"), "(lo, hi) enclosure from the first terms.");

  m.def("dtilde_series", [](const py::object& x, int radix) { return to_py(dtilde_series(from_py(x), Radix(radix))); },
        py::arg("x"), py::arg("radix"));

  m.def("d_n", [](const py::object& point, int radix, Index n) { return to_py(d_n(stream_of(point, radix), n)); },
        py::arg("point"), py::arg("radix"), py::arg("n"));

  m.def("deriv_signs", [](const py::object& point, int radix, Index count) {
        return deriv_signs(stream_of(point, radix), count).signs;
      }, py::arg("point"), py::arg("radix"), py::arg("count"));

  m.def("criterion", [](const py::object& point, int radix, const std::string& side, const std::string& sign,
                        std::size_t count) {
        py::list out;
        for (const auto& t : criterion_sequence(stream_of(point, radix), side_of(side), sign_of(sign), count)) {
          py::dict d;
          d["anchor"] = t.anchor;
          d["sum_part"] = t.sum_part;
          d["gap"] = t.gap;
          d["value"] = t.value;
          out.append(d);
        }
        return out;
      }, py::arg("point"), py::arg("radix"), py::arg("side"), py::arg("sign"), py::arg("count"));

  m.def("classify", [](const py::object& point, int radix, unsigned depth) {
        const auto v = classify(stream_of(point, radix), depth);
        py::dict d;
        d["left"] = verdict(v.left);
        d["right"] = verdict(v.right);
        return d;
      }, py::arg("point"), py::arg("radix"), py::arg("depth") = 4);

  m.def("quotient_probe", [](const py::object& point, int radix, const std::string& side, std::size_t steps) {
        py::list out;
        for (const auto& st : quotient_probe(stream_of(point, radix), side_of(side), steps)) {
          py::dict d;
          d["target"] = to_py(st.target);
          d["h"] = to_py(st.h);
          d["quotient"] = to_py(st.quotient);
          out.append(d);
        }
        return out;
      }, py::arg("point"), py::arg("radix"), py::arg("side"), py::arg("steps"));

  m.def("enum_B", [](unsigned n, int radix, const std::string& sign) {
        std::vector<std::string> out;
        for (const auto& w : enum_B(n, Radix(radix), sign_of(sign)).words) out.push_back(spell(w));
        return out;
      }, py::arg("n"), py::arg("radix"), py::arg("sign") = "plus");

  m.def("count_B", [](unsigned n, int radix) { return to_py(count_B(n, Radix(radix))); }, py::arg("n"),
        py::arg("radix"));

  m.def("ifs_approx", [](unsigned n, int radix, const std::string& sign, unsigned depth) {
        const auto set = ifs_approx(n, Radix(radix), sign_of(sign), depth);
        py::list out;
        for (std::size_t i = 0; i < set.size(); ++i) {
          const auto [lo, hi] = set.interval(i);
          out.append(py::make_tuple(to_py(lo), to_py(hi)));
        }
        return out;
      }, py::arg("n"), py::arg("radix"), py::arg("sign") = "plus", py::arg("depth") = 2);

  m.def("dim_bounds", [](unsigned n, int radix) {
        const auto b = dim_bounds(n, Radix(radix), Sign::Plus);
        py::dict d;
        d["count"] = to_py(b.count);
        d["exact_ratio"] = b.exact_ratio;
        d["lemma_bound"] = b.lemma_bound;
        return d;
      }, py::arg("n"), py::arg("radix"));

  m.def("box_count_dim", [](unsigned n, int radix, const std::string& sign, unsigned depth,
                            const std::vector<unsigned>& exponents) {
        return box_count_dim(ifs_approx(n, Radix(radix), sign_of(sign), depth), exponents).slope;
      }, py::arg("n"), py::arg("radix"), py::arg("sign"), py::arg("depth"), py::arg("exponents"));

  m.def("sample_null_measure", [](int radix, std::uint64_t digits, std::uint64_t samples, std::uint64_t seed,
                                  unsigned threads) {
        NullMeasureStats st;
        {
          py::gil_scoped_release release;
          st = sample_null_measure(Radix(radix), digits, samples, seed, threads);
        }
        py::dict d;
        d["mean"] = st.mean;
        d["variance"] = st.variance;
        d["tail_fraction"] = std::vector<double>(st.tail_fraction.begin(), st.tail_fraction.end());
        return d;
      }, py::arg("radix"), py::arg("digits"), py::arg("samples"), py::arg("seed"), py::arg("threads") = 0);
}
