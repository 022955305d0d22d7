#include "pythreg/report_json.hpp"

#include "json.hpp"

namespace pythreg {

namespace {

using nlohmann::ordered_json;

ordered_json cj(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ordered_json terms(const std::vector<std::pair<std::string, double>>& t) {
  ordered_json o = ordered_json::object();
  for (const auto& [k, v] : t) o[k] = v;
  return o;
}

ordered_json cfg_json(const WeightConfig& c) {
  return {{"ell", c.ell}, {"ell_prime", c.ell_prime}, {"delta", c.delta}, {"kind", to_string(c.kind)}};
}

}  // namespace

std::string to_json(const DistanceReport& r) {
  return ordered_json{{"f_desc", r.f_desc}, {"g_desc", r.g_desc},         {"x", r.x},
                      {"y", r.y},           {"d_squared", r.d_squared},   {"restricted", r.restricted},
                      {"prime_count", r.prime_count}}
      .dump();
}

std::string to_json(const ConcentrationReport& r) {
  return ordered_json{{"kind", r.kind},
                      {"f_desc", r.f_desc},
                      {"chi_desc", r.chi_desc},
                      {"t", r.t},
                      {"K", r.K},
                      {"Q", r.Q},
                      {"N", r.N},
                      {"lhs", r.lhs},
                      {"drift", cj(r.drift)},
                      {"bound_terms", terms(r.bound_terms)},
                      {"bound_total", r.bound_total},
                      {"ratio", r.ratio},
                      {"truncation", r.truncation},
                      {"flags", r.flags}}
      .dump();
}

std::string to_json(const TkReport& r) {
  return ordered_json{{"K0", r.K0},
                      {"Q", r.Q},
                      {"a", r.a},
                      {"b", r.b},
                      {"N", r.N},
                      {"variance_lhs", r.variance_lhs},
                      {"H_N", cj(r.H_N)},
                      {"exact_mean_check", r.exact_mean_check},
                      {"mean_h1", cj(r.mean_h1)},
                      {"weighted_h1", cj(r.weighted_h1)},
                      {"bound_terms", terms(r.bound_terms)},
                      {"bound_total", r.bound_total},
                      {"ratio", r.ratio}}
      .dump();
}

std::string to_json(const CountingReport& r) {
  ordered_json o{{"N", r.N}, {"Q", r.Q}, {"a", r.a}, {"b", r.b}, {"p", r.p}, {"q", r.q}, {"empirical", r.empirical}};
  o["closed_form"] = r.closed_form ? ordered_json(*r.closed_form) : ordered_json(nullptr);
  o["abs_error"] = r.closed_form ? ordered_json(r.abs_error) : ordered_json(nullptr);
  o["bound_rhs"] = r.bound_rhs ? ordered_json(*r.bound_rhs) : ordered_json(nullptr);
  o["ratio"] = r.ratio ? ordered_json(*r.ratio) : ordered_json(nullptr);
  return o.dump();
}

std::string to_json(const PairAverageReport& r) {
  return ordered_json{{"kind", to_string(r.kind)}, {"f_desc", r.f_desc}, {"Q", r.Q},
                      {"N", r.N},                  {"cfg", cfg_json(r.cfg)}, {"value", cj(r.value)},
                      {"weight_mass", r.weight_mass}, {"runtime_cells", r.runtime_cells}}
      .dump();
}

std::string to_json(const TripleSearchResult& r) {
  ordered_json hits = ordered_json::array();
  for (const auto& h : r.hits)
    hits.push_back({{"k", h.k}, {"m", h.m}, {"n", h.n}, {"x", h.x}, {"y", h.y}, {"z", h.z},
                    {"certificate", {cj(h.fx), cj(h.fy), cj(h.fz)}}});
  return ordered_json{{"hits", hits}, {"dropped", r.dropped}}.dump();
}

std::string to_json(const FolnerSet& s) {
  ordered_json values = ordered_json::array();
  for (const auto& v : s.values) values.push_back(v ? ordered_json(*v) : ordered_json(nullptr));
  return ordered_json{{"K", s.K}, {"primes", s.primes}, {"elements", s.elements}, {"values", values}}.dump();
}

}  // namespace pythreg
