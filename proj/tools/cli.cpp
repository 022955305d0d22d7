#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "pythreg/concentration.hpp"
#include "pythreg/counting.hpp"
#include "pythreg/error.hpp"
#include "pythreg/pair_averages.hpp"
#include "pythreg/parallel.hpp"
#include "pythreg/pretentious.hpp"
#include "pythreg/report_json.hpp"
#include "pythreg/triples.hpp"
#include "pythreg/weights.hpp"

namespace pythreg::cli {

namespace {

std::string g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string terms_field(const std::vector<std::pair<std::string, double>>& terms) {
  std::string s;
  for (const auto& [k, v] : terms) s += (s.empty() ? "" : ";") + k + "=" + g(v);
  return s;
}

// Every parameter any subcommand reads; subcommands bind the ones they use.
struct Params {
  std::string f = "one";
  std::string g = "one";
  std::string chi = "one";
  std::string h_table;
  std::vector<u64> h_primes;
  std::string table;
  std::string mode = "cesaro";
  std::string kind;
  double x = 0, y = 0, t = 0, delta = 0.1;
  bool restricted = false, abs_dist = false;
  u64 a_step = 1, b_shift = 0;
  u64 N = 0, K = 5, K0 = 5, Q = 30, d = 2, bound = 100, steps = 3, tail = 0;
  i64 a = 1, b = 0, l1 = 1, l2 = 0;
  std::vector<u64> p, q, l;
  u64 ell = 1, ellp = 1, tl1 = 1, tl2 = 2, tl3 = 1;
};

WeightConfig weight_cfg(const Params& p, WeightKind kind) {
  WeightConfig c;
  c.ell = p.ell;
  c.ell_prime = p.ellp;
  c.delta = p.delta;
  c.kind = kind;
  validate(c);
  return c;
}

Result pair_result(const PairAverageReport& r) {
  Result res;
  res.summary = to_string(r.kind) + " value=" + g(r.value.real()) + (r.value.imag() < 0 ? "" : "+") + g(r.value.imag()) +
                "j weight_mass=" + g(r.weight_mass);
  res.csv = pair_csv_header() + "\n" + pair_csv_row(r) + "\n";
  res.json = to_json(r);
  res.value = r.value;
  res.mass = r.weight_mass;
  return res;
}

Result value_result(const std::string& name, const std::string& header, const std::string& row, std::complex<double> v,
                    const std::string& json_extra = "") {
  Result res;
  res.summary = name + " value=" + g(v.real()) + (v.imag() < 0 ? "" : "+") + g(v.imag()) + "j";
  res.csv = header + "\n" + row + "\n";
  res.json = "{" + json_extra + "\"value\":{\"re\":" + g(v.real()) + ",\"im\":" + g(v.imag()) + "}}";
  res.value = v;
  return res;
}

Result conc_result(const ConcentrationReport& r) {
  Result res;
  res.summary = r.kind + " lhs=" + g(r.lhs) + " bound_total=" + g(r.bound_total) + " ratio=" + g(r.ratio);
  res.csv = "kind,f,chi,t,K,Q,N,lhs,drift_re,drift_im,bound_terms,bound_total,ratio,truncation,flags\n";
  std::string flags;
  for (const auto& fl : r.flags) flags += (flags.empty() ? "" : ";") + fl;
  res.csv += r.kind + "," + csv_field(r.f_desc) + "," + csv_field(r.chi_desc) + "," + g(r.t) + "," + std::to_string(r.K) + "," +
             std::to_string(r.Q) + "," + std::to_string(r.N) + "," + g(r.lhs) + "," + g(r.drift.real()) + "," +
             g(r.drift.imag()) + "," + terms_field(r.bound_terms) + "," + g(r.bound_total) + "," + g(r.ratio) + "," +
             std::to_string(r.truncation) + "," + csv_field(flags) + "\n";
  res.json = to_json(r);
  return res;
}

AddFunc additive_from(const Params& p) {
  if (!p.h_table.empty()) return load_add_table(p.h_table);
  std::map<std::pair<u64, u32>, std::complex<double>> vals;
  for (u64 pr : p.h_primes) vals[{pr, 1}] = 1.0;
  return AddFunc(std::move(vals));
}

struct Command {
  CLI::App* app;
  std::function<Result()> run;
};

// Builds the parser, parses `args` and returns the selected command's result.
// Global options (workers, output) are reported through the out-parameters.
class Runner {
 public:
  Runner() : app_("pythreg", "pythreg") { build(); }

  CLI::App& app() { return app_; }
  const std::string& out_path() const { return out_; }
  bool json() const { return json_; }
  unsigned workers() const { return workers_; }
  bool print_config() const { return print_config_; }

  Result execute() {
    for (const auto& c : commands_)
      if (c.app->parsed()) return c.run();
    throw InvalidArgument("no subcommand selected");
  }

  // TOML table for the selected subcommand with every option that has a
  // value, given or defaulted; readable again through --config.
  std::string effective_config() const {
    const CLI::App* leaf = &app_;
    std::string path;
    for (bool descended = true; descended;) {
      descended = false;
      for (const CLI::App* sub : leaf->get_subcommands({}))
        if (sub->parsed()) {
          path += (path.empty() ? "" : ".") + sub->get_name();
          leaf = sub;
          descended = true;
          break;
        }
    }
    std::string out = "[" + path + "]\n";
    for (const CLI::Option* opt : leaf->get_options({})) {
      const std::string name = opt->get_single_name();
      if (name == "help") continue;
      std::vector<std::string> vals = opt->count() > 0 ? opt->results() : std::vector<std::string>{};
      if (vals.empty() && !opt->get_default_str().empty()) vals = {opt->get_default_str()};
      if (vals.empty()) continue;
      auto render = [](const std::string& v) {
        if (v == "true" || v == "false") return v;
        char* end = nullptr;
        std::strtod(v.c_str(), &end);
        if (!v.empty() && end == v.c_str() + v.size()) return v;
        std::string q = "\"";
        for (char c : v) q += (c == '"' || c == '\\') ? std::string("\\") + c : std::string(1, c);
        return q + "\"";
      };
      if (vals.size() == 1) {
        out += name + " = " + render(vals[0]) + "\n";
      } else {
        out += name + " = [";
        for (std::size_t i = 0; i < vals.size(); ++i) out += (i ? ", " : "") + render(vals[i]);
        out += "]\n";
      }
    }
    return out;
  }

  bool ladder_selected() const { return ladder_->parsed(); }
  u64 ladder_steps() const { return p_.steps; }
  std::vector<std::string> ladder_args() const { return ladder_->remaining(); }

 private:
  void add(CLI::App* sub, std::function<Result()> fn) { commands_.push_back({sub, std::move(fn)}); }

  void weight_opts(CLI::App* s) {
    s->add_option("--ell", p_.ell, "ell");
    s->add_option("--ellp", p_.ellp, "ell'");
    s->add_option("--delta", p_.delta, "arc half-width parameter");
  }

  void build() {
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.option_defaults()->always_capture_default();
    app_.set_config("--config", "", "TOML file, one table per subcommand");
    app_.add_option("--out", out_, "write the report to this path");
    app_.add_option("--workers", workers_, "worker threads")->check(CLI::Range(1U, 1024U));
    app_.add_flag("--json", json_, "JSON report instead of CSV");
    app_.add_flag("--print-config", print_config_, "print the effective configuration as TOML");

    auto* dist = app_.add_subcommand("distance", "pretentious distance");
    dist->add_option("--f", p_.f)->required();
    dist->add_option("--g", p_.g);
    dist->add_option("--x", p_.x)->required();
    dist->add_option("--y", p_.y)->required();
    dist->add_flag("--restricted", p_.restricted, "primes 1 mod 4 only");
    dist->add_flag("--abs", p_.abs_dist, "sum |1 - f conj g| / p instead");
    add(dist, [this] {
      const MultFunc f = parse_spec(p_.f), gg = parse_spec(p_.g);
      Result r;
      if (p_.abs_dist) {
        const double v = abs_distance(f, gg, p_.x, p_.y);
        r.summary = "abs_distance " + g(v);
        r.csv = "f,g,x,y,abs_distance\n" + csv_field(f.describe()) + "," + csv_field(gg.describe()) + "," + g(p_.x) + "," +
                g(p_.y) + "," + g(v) + "\n";
        r.json = "{\"abs_distance\":" + g(v) + "}";
        return r;
      }
      const auto d = distance_squared(f, gg, p_.x, p_.y, p_.restricted);
      r.summary = "distance_squared " + g(d.d_squared) + " primes=" + std::to_string(d.prime_count);
      r.csv = "f,g,x,y,restricted,d_squared,prime_count\n" + csv_field(d.f_desc) + "," + csv_field(d.g_desc) + "," + g(d.x) +
              "," + g(d.y) + "," + (d.restricted ? "1" : "0") + "," + g(d.d_squared) + "," + std::to_string(d.prime_count) + "\n";
      r.json = to_json(d);
      return r;
    });

    auto* mp = app_.add_subcommand("meanprobe", "mean of f(an+b)");
    mp->add_option("--f", p_.f)->required();
    mp->add_option("--a", p_.a_step);
    mp->add_option("--b", p_.b_shift);
    mp->add_option("--N", p_.N)->required();
    mp->add_option("--mode", p_.mode)->check(CLI::IsMember({"cesaro", "logarithmic"}));
    add(mp, [this] {
      const MultFunc f = parse_spec(p_.f);
      const auto v = mean_probe(f, p_.a_step, p_.b_shift, p_.N, p_.mode == "cesaro" ? MeanMode::Cesaro : MeanMode::Logarithmic);
      return value_result("meanprobe", "f,a,b,N,mode,value_re,value_im",
                          csv_field(f.describe()) + "," + std::to_string(p_.a_step) + "," + std::to_string(p_.b_shift) + "," +
                              std::to_string(p_.N) + "," + p_.mode + "," + g(v.real()) + "," + g(v.imag()),
                          v);
    });

    auto* cl = app_.add_subcommand("conc-linear", "linear concentration");
    cl->add_option("--f", p_.f)->required();
    cl->add_option("--chi", p_.chi);
    cl->add_option("--t", p_.t);
    cl->add_option("--K", p_.K);
    cl->add_option("--Q", p_.Q);
    cl->add_option("--N", p_.N)->required();
    cl->add_option("--l1", p_.l1);
    cl->add_option("--l2", p_.l2);
    cl->add_option("--tail", p_.tail, "upper end of the distance tail (0: QN+1)");
    add(cl, [this] {
      const MultFunc f = parse_spec(p_.f), chi = parse_spec(p_.chi);
      const LinearOptions opt{p_.tail};
      if (p_.l1 == 1 && p_.l2 == 0) return conc_result(linear_concentration(f, chi, p_.t, p_.K, p_.Q, p_.N, opt));
      return conc_result(shifted_linear_concentration(f, chi, p_.t, p_.K, p_.Q, p_.l1, p_.l2, p_.N, opt));
    });

    auto* cq = app_.add_subcommand("conc-quadratic", "quadratic concentration");
    cq->add_option("--f", p_.f)->required();
    cq->add_option("--chi", p_.chi);
    cq->add_option("--t", p_.t);
    cq->add_option("--K0", p_.K0);
    cq->add_option("--Q", p_.Q);
    cq->add_option("--a", p_.a);
    cq->add_option("--b", p_.b);
    cq->add_option("--N", p_.N)->required();
    cq->add_option("--tail", p_.tail, "upper end of the distance tail (0: 3Q^2N^2)");
    add(cq, [this] {
      const MultFunc f = parse_spec(p_.f), chi = parse_spec(p_.chi);
      return conc_result(quadratic_concentration(f, chi, p_.t, p_.K0, p_.Q, p_.a, p_.b, p_.N, QuadraticOptions{p_.tail}));
    });

    auto* tk = app_.add_subcommand("tk", "variance of an additive function on sums of squares");
    tk->add_option("--htable", p_.h_table, "table file: 'p re im' or 'p k re im'");
    tk->add_option("--hprimes", p_.h_primes, "primes where h = 1")->delimiter(',');
    tk->add_option("--K0", p_.K0);
    tk->add_option("--Q", p_.Q);
    tk->add_option("--a", p_.a);
    tk->add_option("--b", p_.b);
    tk->add_option("--N", p_.N)->required();
    add(tk, [this] {
      const auto r = tk_additive(additive_from(p_), p_.K0, p_.Q, p_.a, p_.b, p_.N);
      Result res;
      res.summary = "tk variance_lhs=" + g(r.variance_lhs) + " exact_mean_check=" + g(r.exact_mean_check) + " ratio=" + g(r.ratio);
      res.csv = "K0,Q,a,b,N,variance_lhs,H_re,H_im,exact_mean_check,bound_terms,bound_total,ratio\n" + std::to_string(r.K0) + "," +
                std::to_string(r.Q) + "," + std::to_string(r.a) + "," + std::to_string(r.b) + "," + std::to_string(r.N) + "," +
                g(r.variance_lhs) + "," + g(r.H_N.real()) + "," + g(r.H_N.imag()) + "," + g(r.exact_mean_check) + "," +
                terms_field(r.bound_terms) + "," + g(r.bound_total) + "," + g(r.ratio) + "\n";
      res.json = to_json(r);
      return res;
    });

    auto* counting = app_.add_subcommand("counting", "exact-divisibility densities on the quadratic grid");
    counting->require_subcommand(1);
    auto* wpair = counting->add_subcommand("wpair", "share of cells with p || v and q || v");
    auto* wdiv = counting->add_subcommand("wdiv", "share of cells with l | v");
    for (auto* s : {wpair, wdiv}) {
      s->add_option("--N", p_.N)->required();
      s->add_option("--Q", p_.Q);
      s->add_option("--a", p_.a);
      s->add_option("--b", p_.b);
    }
    wpair->add_option("--p", p_.p)->required()->delimiter(',');
    wpair->add_option("--q", p_.q)->required()->delimiter(',');
    add(wpair, [this] {
      const auto grid = grid_quadratic_factorize(static_cast<i64>(p_.Q), p_.a, p_.b, p_.N);
      Result res;
      res.csv = counting_csv_header() + "\n";
      std::string json = "[";
      double worst = 0;
      for (u64 pp : p_.p)
        for (u64 qq : p_.q) {
          const auto r = w_pair_report(grid, pp, qq);
          res.csv += counting_csv_row(r) + "\n";
          json += (json.size() > 1 ? "," : "") + to_json(r);
          worst = std::max(worst, r.abs_error);
          if (res.summary.empty()) res.summary = "wpair empirical=" + g(r.empirical) + " closed_form=" + g(*r.closed_form);
        }
      res.summary += " rows=" + std::to_string(p_.p.size() * p_.q.size()) + " max_abs_error=" + g(worst);
      res.json = json + "]";
      return res;
    });
    wdiv->add_option("--l", p_.l)->required()->delimiter(',');
    add(wdiv, [this] {
      const auto grid = grid_quadratic_factorize(static_cast<i64>(p_.Q), p_.a, p_.b, p_.N);
      Result res;
      res.csv = "N,Q,a,b,l,empirical,bound_rhs,ratio\n";
      std::string json = "[";
      double worst = 0;
      for (u64 ll : p_.l) {
        const auto r = w_divisor(grid, ll);
        res.csv += std::to_string(r.N) + "," + std::to_string(r.Q) + "," + std::to_string(r.a) + "," + std::to_string(r.b) + "," +
                   std::to_string(ll) + "," + g(r.empirical) + "," + g(*r.bound_rhs) + "," + g(*r.ratio) + "\n";
        json += (json.size() > 1 ? "," : "") + to_json(r);
        worst = std::max(worst, *r.ratio);
      }
      res.summary = "wdiv rows=" + std::to_string(p_.l.size()) + " max_ratio=" + g(worst);
      res.json = json + "]";
      return res;
    });

    auto* weights = app_.add_subcommand("weights", "trapezoid weights");
    weights->require_subcommand(1);
    auto* density = weights->add_subcommand("density", "Riemann-sum density of the weight");
    auto* slope = weights->add_subcommand("slope", "resonance slope");
    for (auto* s : {density, slope}) {
      s->add_option("--kind", p_.kind)->required()->check(CLI::IsMember({"hyperbolic", "elliptic"}));
      weight_opts(s);
    }
    density->add_option("--N", p_.N)->required();
    add(density, [this] {
      const auto cfg = weight_cfg(p_, weight_kind_from_string(p_.kind));
      const double v = weight_density(cfg, p_.N);
      Result res;
      res.summary = "weight_density " + g(v);
      res.csv = weight_density_csv_header() + "\n" + weight_density_csv_row(cfg, p_.N, v) + "\n";
      res.json = "{\"kind\":\"" + p_.kind + "\",\"ell\":" + std::to_string(cfg.ell) + ",\"ell_prime\":" + std::to_string(cfg.ell_prime) +
                 ",\"delta\":" + g(cfg.delta) + ",\"N\":" + std::to_string(p_.N) + ",\"density\":" + g(v) + "}";
      res.value = v;
      return res;
    });
    add(slope, [this] {
      const auto cfg = weight_cfg(p_, weight_kind_from_string(p_.kind));
      const auto s = resonance_slope(cfg);
      Result res;
      res.summary = "resonance_slope " + g(s.a) + (s.degenerate ? " (degenerate b=2)" : "");
      res.csv = "kind,ell,ell_prime,a,k,b,degenerate\n" + p_.kind + "," + std::to_string(cfg.ell) + "," + std::to_string(cfg.ell_prime) +
                "," + g(s.a) + "," + std::to_string(s.k) + "," + g(s.b) + "," + (s.degenerate ? "1" : "0") + "\n";
      res.json = "{\"a\":" + g(s.a) + ",\"k\":" + std::to_string(s.k) + ",\"b\":" + g(s.b) +
                 ",\"degenerate\":" + (s.degenerate ? "true" : "false") + "}";
      return res;
    });

    auto* folner = app_.add_subcommand("folner", "multiplicative Folner sets");
    folner->require_subcommand(1);
    auto* fset = folner->add_subcommand("set", "enumerate Phi_K");
    auto* favg = folner->add_subcommand("avg", "mean of f over Phi_K");
    fset->add_option("--K", p_.K)->required();
    favg->add_option("--K", p_.K)->required();
    favg->add_option("--f", p_.f)->required();
    add(fset, [this] {
      const auto s = folner_set(p_.K);
      Result res;
      res.summary = "folner_set K=" + std::to_string(s.K) + " size=" + std::to_string(s.size());
      res.csv = "index,Q,exponents\n";
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::string ex;
        for (u32 e : s.elements[i]) ex += (ex.empty() ? "" : ";") + std::to_string(e);
        res.csv += std::to_string(i) + "," + (s.values[i] ? std::to_string(*s.values[i]) : "") + "," + ex + "\n";
      }
      res.json = to_json(s);
      return res;
    });
    add(favg, [this] {
      const MultFunc f = parse_spec(p_.f);
      const auto set = folner_set(p_.K);
      const auto v = folner_average(f, set);
      return value_result("folner_avg", "f,K,size,value_re,value_im",
                          csv_field(f.describe()) + "," + std::to_string(p_.K) + "," + std::to_string(set.size()) + "," +
                              g(v.real()) + "," + g(v.imag()),
                          v);
    });

    auto* pairs = app_.add_subcommand("pairs", "weighted pair averages");
    pairs->require_subcommand(1);
    auto* t1 = pairs->add_subcommand("type1", "hyperbolic weighted average");
    auto* t2 = pairs->add_subcommand("type2", "elliptic weighted average");
    auto* qs = pairs->add_subcommand("qstab", "Q-stability over Phi_K");
    auto* fa = pairs->add_subcommand("folneravg", "average over Q in Phi_K");
    for (auto* s : {t1, t2, qs, fa}) {
      s->add_option("--f", p_.f)->required();
      s->add_option("--N", p_.N)->required();
      weight_opts(s);
    }
    t1->add_option("--Q", p_.Q);
    t2->add_option("--Q", p_.Q);
    qs->add_option("--chi", p_.chi);
    qs->add_option("--t", p_.t);
    qs->add_option("--K", p_.K);
    fa->add_option("--K", p_.K);
    fa->add_option("--kind", p_.kind)->required()->check(CLI::IsMember({"typeI", "typeII"}));
    add(t1, [this] { return pair_result(typeI_average(parse_spec(p_.f), p_.Q, weight_cfg(p_, WeightKind::Hyperbolic), p_.N)); });
    add(t2, [this] { return pair_result(typeII_average(parse_spec(p_.f), p_.Q, weight_cfg(p_, WeightKind::Elliptic), p_.N)); });
    add(qs, [this] {
      const MultFunc f = parse_spec(p_.f), chi = parse_spec(p_.chi);
      const double v = q_stability(f, chi, p_.t, weight_cfg(p_, WeightKind::Elliptic), p_.K, p_.N);
      return value_result("qstab", "f,chi,t,K,N,ell,ell_prime,delta,value",
                          csv_field(f.describe()) + "," + csv_field(chi.describe()) + "," + g(p_.t) + "," + std::to_string(p_.K) +
                              "," + std::to_string(p_.N) + "," + std::to_string(p_.ell) + "," + std::to_string(p_.ellp) + "," +
                              g(p_.delta) + "," + g(v),
                          v);
    });
    add(fa, [this] {
      const MultFunc f = parse_spec(p_.f);
      const bool type1 = p_.kind == "typeI";
      const auto cfg = weight_cfg(p_, type1 ? WeightKind::Hyperbolic : WeightKind::Elliptic);
      const auto v = folner_q_average(f, cfg, p_.K, p_.N, type1 ? PairKind::TypeI : PairKind::TypeII);
      return value_result("folneravg", "kind,f,K,ell,ell_prime,delta,N,value_re,value_im",
                          p_.kind + "," + csv_field(f.describe()) + "," + std::to_string(p_.K) + "," + std::to_string(p_.ell) + "," +
                              std::to_string(p_.ellp) + "," + g(p_.delta) + "," + std::to_string(p_.N) + "," + g(v.real()) + "," +
                              g(v.imag()),
                          v);
    });

    auto* dl = app_.add_subcommand("dlms", "logarithmic average of f(n(n+1)) conj f(m^2)");
    dl->add_option("--f", p_.f)->required();
    dl->add_option("--N", p_.N)->required();
    add(dl, [this] {
      const MultFunc f = parse_spec(p_.f);
      const auto v = dlms_log_average(f, p_.N);
      return value_result("dlms", "f,N,value_re,value_im",
                          csv_field(f.describe()) + "," + std::to_string(p_.N) + "," + g(v.real()) + "," + g(v.imag()), v);
    });

    auto* triples = app_.add_subcommand("triples", "Pythagorean searches");
    triples->require_subcommand(1);
    auto* search = triples->add_subcommand("search", "level-set triples");
    auto* psearch = triples->add_subcommand("pairsearch", "monochromatic pairs");
    auto* tdens = triples->add_subcommand("density", "triple density over Phi_K");
    search->add_option("--f", p_.f)->required();
    search->add_option("--bound", p_.bound)->required();
    search->add_option("--l1", p_.tl1);
    search->add_option("--l2", p_.tl2);
    search->add_option("--l3", p_.tl3);
    add(search, [this] {
      const MultFunc f = parse_spec(p_.f);
      const auto r = search_level_set_triples(f, p_.bound, {p_.tl1, p_.tl2, p_.tl3});
      Result res;
      res.summary = "triples hits=" + std::to_string(r.hits.size()) + " dropped=" + std::to_string(r.dropped);
      res.csv = triple_csv_header() + "\n";
      for (const auto& h : r.hits) res.csv += triple_csv_row(h) + "\n";
      res.json = to_json(r);
      return res;
    });
    psearch->add_option("--f", p_.f, "level sets of this function");
    psearch->add_option("--table", p_.table, "file of whitespace-separated colors for n = 1..N");
    psearch->add_option("--N", p_.N)->required();
    psearch->add_option("--kind", p_.kind)->required()->check(CLI::IsMember({"xy", "yz"}));
    add(psearch, [this] {
      const ColoringSpec c = p_.table.empty() ? ColoringSpec::level_sets(parse_spec(p_.f)) : ColoringSpec::load(p_.table);
      const auto hits = search_monochromatic_pairs(c, p_.N, p_.kind == "xy" ? PairSearchKind::XY : PairSearchKind::YZ);
      Result res;
      res.summary = "pairsearch hits=" + std::to_string(hits.size());
      res.csv = p_.kind == "xy" ? "x,y,z\n" : "y,z,x\n";
      std::string json = "[";
      for (const auto& h : hits) {
        res.csv += std::to_string(h.first) + "," + std::to_string(h.second) + "," + std::to_string(h.witness) + "\n";
        json += (json.size() > 1 ? "," : "") + ("[" + std::to_string(h.first) + "," + std::to_string(h.second) + "," +
                                                std::to_string(h.witness) + "]");
      }
      res.json = json + "]";
      return res;
    });
    tdens->add_option("--f", p_.f)->required();
    tdens->add_option("--d", p_.d)->required();
    tdens->add_option("--N", p_.N)->required();
    tdens->add_option("--K", p_.K)->required();
    add(tdens, [this] {
      const MultFunc f = parse_spec(p_.f);
      const double v = triple_density(f, p_.d, p_.N, p_.K);
      return value_result("triple_density", "f,d,N,K,density",
                          csv_field(f.describe()) + "," + std::to_string(p_.d) + "," + std::to_string(p_.N) + "," +
                              std::to_string(p_.K) + "," + g(v),
                          v);
    });

    ladder_ = app_.add_subcommand("ladder", "rerun an average-valued command at N, 2N, 4N, ...");
    ladder_->add_option("--steps", p_.steps, "number of rungs")->check(CLI::Range(1, 30));
    ladder_->prefix_command();
    ladder_->allow_extras();
    ladder_->fallthrough(false);
  }

  CLI::App app_;
  Params p_;
  std::string out_;
  bool json_ = false;
  bool print_config_ = false;
  unsigned workers_ = 1;
  std::vector<Command> commands_;
  CLI::App* ladder_ = nullptr;
};

void parse(Runner& r, const std::vector<std::string>& args) {
  std::vector<std::string> rev(args.rbegin(), args.rend());
  r.app().parse(rev);
}

Result run_ladder(const std::vector<std::string>& target, u64 steps) {
  auto it = std::find(target.begin(), target.end(), "--N");
  if (it == target.end() || it + 1 == target.end()) throw InvalidArgument("ladder: the target command needs --N");
  const std::size_t pos = static_cast<std::size_t>(it - target.begin()) + 1;
  u64 N0 = 0;
  try {
    N0 = std::stoull(target[pos]);
  } catch (const std::exception&) {
    throw InvalidArgument("ladder: --N must be an integer");
  }
  Result res;
  res.csv = "rung,N,value_re,value_im,weight_mass\n";
  std::string json = "[";
  for (u64 i = 0; i < steps; ++i) {
    auto args = target;
    const u64 N = N0 << i;
    args[pos] = std::to_string(N);
    Runner sub;
    parse(sub, args);
    if (sub.ladder_selected()) throw InvalidArgument("ladder: nested ladders are not supported");
    const Result r = sub.execute();
    if (!r.value) throw InvalidArgument("ladder: target command is not average-valued");
    res.csv += std::to_string(i) + "," + std::to_string(N) + "," + g(r.value->real()) + "," + g(r.value->imag()) + "," +
               (r.mass ? g(*r.mass) : "") + "\n";
    json += std::string(i ? "," : "") + "{\"rung\":" + std::to_string(i) + ",\"N\":" + std::to_string(N) + ",\"value\":{\"re\":" +
            g(r.value->real()) + ",\"im\":" + g(r.value->imag()) + "}" + (r.mass ? ",\"weight_mass\":" + g(*r.mass) : "") + "}";
  }
  res.summary = "ladder rungs=" + std::to_string(steps);
  res.json = json + "]";
  return res;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner runner;
  try {
    parse(runner, args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = runner.app().exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitInvalid;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  if (runner.print_config()) {
    out << runner.effective_config();
    return kExitOk;
  }
  try {
    std::string out_path = runner.out_path();
    bool json = runner.json();
    unsigned workers = runner.workers();
    if (runner.ladder_selected()) {
      // global options written after the ladder target still apply
      Runner target;
      parse(target, runner.ladder_args());
      if (out_path.empty()) out_path = target.out_path();
      json = json || target.json();
      workers = std::max(workers, target.workers());
    }
    parallel::WorkerScope scope(workers);
    const Result r = runner.ladder_selected() ? run_ladder(runner.ladder_args(), runner.ladder_steps()) : runner.execute();
    const std::string body = json ? r.json + "\n" : r.csv;
    out << r.summary << "\n";
    if (out_path.empty()) {
      out << body;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw InvalidArgument("cannot write " + out_path);
      f << body;
    }
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace pythreg::cli
