#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pythreg/concentration.hpp"
#include "pythreg/counting.hpp"
#include "pythreg/error.hpp"
#include "pythreg/pair_averages.hpp"
#include "pythreg/parallel.hpp"
#include "pythreg/pretentious.hpp"
#include "pythreg/report_json.hpp"
#include "pythreg/triples.hpp"
#include "pythreg/weights.hpp"

namespace py = pybind11;
using namespace pythreg;

namespace {

template <class R>
py::object as_dict(const R& report) {
  return py::module_::import("json").attr("loads")(to_json(report));
}

WeightConfig make_config(u64 ell, u64 ell_prime, double delta, const std::string& kind) {
  WeightConfig cfg{ell, ell_prime, delta, weight_kind_from_string(kind)};
  validate(cfg);
  return cfg;
}

MeanMode mean_mode(const std::string& s) {
  if (s == "cesaro") return MeanMode::Cesaro;
  if (s == "log") return MeanMode::Logarithmic;
  throw InvalidArgument("mode must be 'cesaro' or 'log'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multiplicative functions on Pythagorean triples";

  auto invalid = py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<Unsupported>(m, "Unsupported", invalid.ptr());
  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);

  py::class_<MultFunc>(m, "MultFunc")
      .def(py::init([](const std::string& text) { return parse_spec(text); }), py::arg("spec"))
      .def("at", &MultFunc::at, py::arg("n"))
      .def("at_prime", &MultFunc::at_prime, py::arg("p"))
      .def("__call__", &MultFunc::at, py::arg("n"))
      .def("circle_valued", &MultFunc::circle_valued)
      .def("describe", &MultFunc::describe)
      .def("__repr__", [](const MultFunc& f) { return "MultFunc('" + f.describe() + "')"; });

  m.def("parse", &parse_spec, py::arg("spec"));
  m.def("product", &product);
  m.def("power", &power, py::arg("f"), py::arg("j"));
  m.def("conjugate", &conjugate);
  m.def("dth_root", &dth_root, py::arg("f"), py::arg("d"));
  m.def("modify_character", &modify_character);
  m.def("character_period", &character_period);
  m.def("decompose", [](const MultFunc& f, u64 d, const MultFunc& chi, double t) {
    Decomposition dec = decompose(f, d, chi, t);
    return py::make_tuple(dec.g, dec.h);
  });

  m.def("set_workers", &parallel::set_workers, py::arg("workers"));
  m.def("workers", &parallel::workers);

  m.def("factorize", [](u64 n) {
    if (n == 0) throw InvalidArgument("factorize: n must be >= 1");
    std::vector<std::pair<u64, u32>> out;
    for (const auto& pp : factorize(n).factors) out.emplace_back(pp.prime, pp.exponent);
    return out;
  });
  m.def("r2", [](u64 n) { return r2(n); });

  m.def(
      "distance",
      [](const MultFunc& f, const MultFunc& g, double x, double y, bool restricted) {
        return as_dict(distance_squared(f, g, x, y, restricted));
      },
      py::arg("f"), py::arg("g"), py::arg("x"), py::arg("y"), py::arg("restricted") = false);
  m.def(
      "mean_probe",
      [](const MultFunc& f, u64 a, u64 b, u64 N, const std::string& mode) {
        return mean_probe(f, a, b, N, mean_mode(mode));
      },
      py::arg("f"), py::arg("a"), py::arg("b"), py::arg("N"), py::arg("mode") = "cesaro");

  m.def(
      "linear_concentration",
      [](const MultFunc& f, const MultFunc& chi, double t, u64 K, u64 Q, u64 N, u64 tail) {
        return as_dict(linear_concentration(f, chi, t, K, Q, N, LinearOptions{tail}));
      },
      py::arg("f"), py::arg("chi"), py::arg("t"), py::arg("K"), py::arg("Q"), py::arg("N"), py::arg("tail") = 0);
  m.def(
      "quadratic_concentration",
      [](const MultFunc& f, const MultFunc& chi, double t, u64 K0, u64 Q, i64 a, i64 b, u64 N, u64 tail) {
        return as_dict(quadratic_concentration(f, chi, t, K0, Q, a, b, N, QuadraticOptions{tail}));
      },
      py::arg("f"), py::arg("chi"), py::arg("t"), py::arg("K0"), py::arg("Q"), py::arg("a"), py::arg("b"),
      py::arg("N"), py::arg("tail") = 0);

  m.def("w_pair", py::overload_cast<u64, i64, i64, i64, u64, u64>(&w_pair_empirical), py::arg("N"), py::arg("Q"),
        py::arg("a"), py::arg("b"), py::arg("p"), py::arg("q"));
  m.def("w_pair_closed_form", &w_pair_closed_form, py::arg("p"), py::arg("q"));
  m.def(
      "w_divisor",
      [](u64 N, i64 Q, i64 a, i64 b, u64 l) { return as_dict(w_divisor(N, Q, a, b, l)); }, py::arg("N"),
      py::arg("Q"), py::arg("a"), py::arg("b"), py::arg("l"));

  m.def(
      "weight",
      [](u64 mm, u64 n, u64 ell, u64 ell_prime, double delta, const std::string& kind) {
        return weight(mm, n, make_config(ell, ell_prime, delta, kind));
      },
      py::arg("m"), py::arg("n"), py::arg("ell") = 1, py::arg("ell_prime") = 1, py::arg("delta") = 0.1,
      py::arg("kind") = "hyperbolic");
  m.def(
      "weight_density",
      [](u64 ell, u64 ell_prime, double delta, const std::string& kind, u64 N) {
        return weight_density(make_config(ell, ell_prime, delta, kind), N);
      },
      py::arg("ell"), py::arg("ell_prime"), py::arg("delta"), py::arg("kind"), py::arg("N"));
  m.def("folner_set", [](u64 K) { return as_dict(folner_set(K)); }, py::arg("K"));
  m.def("folner_average", py::overload_cast<const MultFunc&, u64>(&folner_average), py::arg("f"), py::arg("K"));

  m.def(
      "pair_average",
      [](const MultFunc& f, u64 Q, u64 ell, u64 ell_prime, double delta, u64 N, const std::string& type) {
        const std::string kind = type == "I" ? "hyperbolic" : "elliptic";
        if (type != "I" && type != "II") throw InvalidArgument("type must be 'I' or 'II'");
        const WeightConfig cfg = make_config(ell, ell_prime, delta, kind);
        return as_dict(type == "I" ? typeI_average(f, Q, cfg, N) : typeII_average(f, Q, cfg, N));
      },
      py::arg("f"), py::arg("Q"), py::arg("ell"), py::arg("ell_prime"), py::arg("delta"), py::arg("N"),
      py::arg("type") = "I");
  m.def("dlms_log_average", &dlms_log_average, py::arg("f"), py::arg("N"));

  m.def(
      "parametric_triple",
      [](u64 k, u64 mm, u64 n) {
        const Triple t = parametric_triple(k, mm, n);
        return py::make_tuple(t.x, t.y, t.z);
      },
      py::arg("k"), py::arg("m"), py::arg("n"));
  m.def(
      "search_triples",
      [](const MultFunc& f, u64 bound) {
        std::vector<std::tuple<u64, u64, u64>> out;
        for (const auto& h : search_level_set_triples(f, bound).hits) out.emplace_back(h.x, h.y, h.z);
        return out;
      },
      py::arg("f"), py::arg("bound"));
  m.def(
      "search_pairs",
      [](const MultFunc& f, u64 N, const std::string& kind) {
        if (kind != "xy" && kind != "yz") throw InvalidArgument("kind must be 'xy' or 'yz'");
        std::vector<std::tuple<u64, u64, u64>> out;
        for (const auto& p : search_monochromatic_pairs(ColoringSpec::level_sets(f), N,
                                                        kind == "xy" ? PairSearchKind::XY : PairSearchKind::YZ))
          out.emplace_back(p.first, p.second, p.witness);
        return out;
      },
      py::arg("f"), py::arg("N"), py::arg("kind") = "xy");
  m.def("triple_density", &triple_density, py::arg("f"), py::arg("d"), py::arg("N"), py::arg("K"));
}
