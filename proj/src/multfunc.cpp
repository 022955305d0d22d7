#include "pythreg/multfunc.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "pythreg/error.hpp"

namespace pythreg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxCharacterModulus = 10'000'000;
constexpr std::size_t kMaxTableCheck = 3000;

UnitValue ipow(UnitValue z, u64 e) {
  UnitValue acc{1.0, 0.0};
  while (e > 0) {
    if (e & 1) acc *= z;
    z *= z;
    e >>= 1;
  }
  return acc;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

UnitValue char_at(const spec::Character& c, u64 n) { return c.table[n % c.modulus]; }

// chi~(n): drop the primes dividing q, then look up the coprime part.
UnitValue modchar_at(const spec::Character& c, FactorView f) {
  const u64 q = c.modulus;
  if (f.n != 0) {
    u64 m = f.n;
    for (const auto& pp : f.factors)
      if (q % pp.prime == 0)
        for (u32 e = 0; e < pp.exponent; ++e) m /= pp.prime;
    return c.table[m % q];
  }
  UnitValue acc{1.0, 0.0};
  for (const auto& pp : f.factors)
    if (q % pp.prime != 0) acc *= ipow(c.table[pp.prime % q], pp.exponent);
  return acc;
}

double log_of(FactorView f) {
  if (f.n != 0) return std::log(static_cast<double>(f.n));
  double s = 0.0;
  for (const auto& pp : f.factors) s += pp.exponent * std::log(static_cast<double>(pp.prime));
  return s;
}

UnitValue eval(const MultFunc& f, FactorView v);

struct Evaluator {
  FactorView v;

  UnitValue operator()(const spec::One&) const { return {1.0, 0.0}; }
  UnitValue operator()(const spec::Liouville&) const {
    u64 omega = 0;
    for (const auto& pp : v.factors) omega += pp.exponent;
    return {omega % 2 == 0 ? 1.0 : -1.0, 0.0};
  }
  UnitValue operator()(const spec::Archimedean& a) const {
    if (a.t == 0.0) return {1.0, 0.0};
    return std::polar(1.0, a.t * log_of(v));
  }
  UnitValue operator()(const spec::Character& c) const {
    if (v.n != 0) return char_at(c, v.n);
    UnitValue acc{1.0, 0.0};
    for (const auto& pp : v.factors) acc *= ipow(char_at(c, pp.prime), pp.exponent);
    return acc;
  }
  UnitValue operator()(const spec::ModifiedCharacter& m) const { return modchar_at(m.base, v); }
  UnitValue operator()(const spec::PrimeTable& t) const {
    UnitValue acc{1.0, 0.0};
    for (const auto& pp : v.factors) {
      const auto it = t.values.find(pp.prime);
      acc *= ipow(it == t.values.end() ? t.fallback : it->second, pp.exponent);
    }
    return acc;
  }
  UnitValue operator()(const spec::Product& p) const {
    UnitValue acc{1.0, 0.0};
    for (const auto& f : p.factors) acc *= eval(f, v);
    return acc;
  }
  UnitValue operator()(const spec::Power& p) const {
    const UnitValue z = eval(*p.base, v);
    return p.exponent >= 0 ? ipow(z, static_cast<u64>(p.exponent)) : ipow(std::conj(z), static_cast<u64>(-p.exponent));
  }
  UnitValue operator()(const spec::Conjugate& c) const { return std::conj(eval(*c.base, v)); }
  UnitValue operator()(const spec::Root& r) const {
    UnitValue acc{1.0, 0.0};
    for (const auto& pp : v.factors) {
      const UnitValue z = r.base->at_prime(pp.prime);
      acc *= ipow(unit_from_turns(turns_of(z) / static_cast<double>(r.degree)), pp.exponent);
    }
    return acc;
  }
};

UnitValue eval(const MultFunc& f, FactorView v) { return std::visit(Evaluator{v}, f.node()); }

bool on_circle(UnitValue z) { return std::abs(std::abs(z) - 1.0) <= kUnitTol; }

std::string describe_character(const spec::Character& c) {
  if (c.index >= 0) return "char " + std::to_string(c.modulus) + " " + std::to_string(c.index);
  std::string s = "chartable " + std::to_string(c.modulus);
  for (const auto& z : c.table) s += " " + fmt(z.real()) + " " + fmt(z.imag());
  return s;
}

void check_table(u64 q, const std::vector<UnitValue>& table) {
  if (q < 1) throw InvalidArgument("character table: modulus must be >= 1");
  if (table.size() != q) throw InvalidArgument("character table: need exactly q values");
  if (q > kMaxTableCheck) throw ResourceLimit("character table: modulus too large to validate");
  u64 phi = 0;
  for (u64 r = 0; r < q; ++r) phi += std::gcd(r, q) == 1 ? 1 : 0;
  if (q == 1) phi = 1;
  for (u64 r = 0; r < q; ++r) {
    const bool coprime = std::gcd(r, q) == 1 || q == 1;
    const UnitValue z = table[r];
    if (!coprime) {
      if (z != UnitValue{0.0, 0.0}) throw InvalidArgument("character table: nonzero value at a residue sharing a factor with q");
      continue;
    }
    if (!approx_equal(ipow(z, phi), {1.0, 0.0})) throw InvalidArgument("character table: value is not a phi(q)-th root of unity");
  }
  if (!approx_equal(table[1 % q], {1.0, 0.0})) throw InvalidArgument("character table: chi(1) must be 1");
  for (u64 r = 1; r < q; ++r)
    for (u64 s = r; s < q; ++s)
      if (!approx_equal(table[r] * table[s], table[r * s % q])) throw InvalidArgument("character table: not multiplicative");
}

}  // namespace

// ---------------------------------------------------------------------------

UnitValue unit_from_turns(double turns) {
  const double r = turns - std::floor(turns);
  const double quarters = 4.0 * r;
  const double k = std::round(quarters);
  if (std::abs(quarters - k) <= 1e-14) {
    switch (static_cast<int>(k) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, kTwoPi * r);
}

UnitValue root_of_unity(i64 k, u64 m) {
  if (m == 0) throw InvalidArgument("root_of_unity: m must be >= 1");
  const u64 r = reduce_signed(k, m);
  if ((4 * r) % m == 0) return unit_from_turns(static_cast<double>(4 * r / m) / 4.0);
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(m));
}

double turns_of(UnitValue z) {
  double t = std::arg(z) / kTwoPi;
  if (t >= 0.5 - 1e-12) t -= 1.0;
  return t;
}

MultFunc::MultFunc() : node_(std::make_shared<const Node>(spec::One{})) {}

MultFunc::MultFunc(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

UnitValue MultFunc::at_prime(u64 p) const {
  const PrimePower pp{p, 1};
  return eval(*this, FactorView{p, std::span<const PrimePower>(&pp, 1)});
}

UnitValue MultFunc::operator()(FactorView f) const { return eval(*this, f); }

UnitValue MultFunc::at(u64 n) const {
  if (n == 0) throw InvalidArgument("MultFunc::at: n must be >= 1");
  const auto f = factorize(n);
  return eval(*this, f.view());
}

bool MultFunc::circle_valued() const {
  struct V {
    bool operator()(const spec::One&) const { return true; }
    bool operator()(const spec::Liouville&) const { return true; }
    bool operator()(const spec::Archimedean&) const { return true; }
    bool operator()(const spec::Character& c) const { return c.modulus == 1; }
    bool operator()(const spec::ModifiedCharacter&) const { return true; }
    bool operator()(const spec::PrimeTable& t) const {
      if (!on_circle(t.fallback)) return false;
      for (const auto& [p, z] : t.values)
        if (!on_circle(z)) return false;
      return true;
    }
    bool operator()(const spec::Product& p) const {
      for (const auto& f : p.factors)
        if (!f.circle_valued()) return false;
      return true;
    }
    bool operator()(const spec::Power& p) const { return p.exponent == 0 || p.base->circle_valued(); }
    bool operator()(const spec::Conjugate& c) const { return c.base->circle_valued(); }
    bool operator()(const spec::Root&) const { return true; }
  };
  return std::visit(V{}, node());
}

std::string MultFunc::describe() const {
  struct V {
    std::string operator()(const spec::One&) const { return "one"; }
    std::string operator()(const spec::Liouville&) const { return "liouville"; }
    std::string operator()(const spec::Archimedean& a) const { return "arch " + fmt(a.t); }
    std::string operator()(const spec::Character& c) const { return describe_character(c); }
    std::string operator()(const spec::ModifiedCharacter& m) const {
      if (m.base.index >= 0) return "modchar " + std::to_string(m.base.modulus) + " " + std::to_string(m.base.index);
      return "modify " + describe_character(m.base);
    }
    std::string operator()(const spec::PrimeTable& t) const {
      std::string s = "ptable " + std::to_string(t.values.size());
      for (const auto& [p, z] : t.values) s += " " + std::to_string(p) + " " + fmt(z.real()) + " " + fmt(z.imag());
      return s + " " + fmt(t.fallback.real()) + " " + fmt(t.fallback.imag());
    }
    std::string operator()(const spec::Product& p) const {
      if (p.factors.empty()) return "one";
      std::string s = p.factors.back().describe();
      for (std::size_t i = p.factors.size() - 1; i-- > 0;) s = "prod " + p.factors[i].describe() + " " + s;
      return s;
    }
    std::string operator()(const spec::Power& p) const { return "pow " + p.base->describe() + " " + std::to_string(p.exponent); }
    std::string operator()(const spec::Conjugate& c) const { return "conj " + c.base->describe(); }
    std::string operator()(const spec::Root& r) const { return "root " + r.base->describe() + " " + std::to_string(r.degree); }
  };
  return std::visit(V{}, node());
}

// ---------------------------------------------------------------------------

MultFunc constant_one() { return MultFunc(); }
MultFunc liouville() { return MultFunc(spec::Liouville{}); }
MultFunc archimedean(double t) {
  if (!std::isfinite(t)) throw InvalidArgument("archimedean: t must be finite");
  return MultFunc(spec::Archimedean{t});
}

MultFunc dirichlet_character(u64 q, i64 j) {
  if (q < 2) throw InvalidArgument("dirichlet_character: modulus must be >= 2");
  if (!is_prime(q)) throw Unsupported("dirichlet_character: composite modulus " + std::to_string(q) + " (use a product or a table)");
  if (q > kMaxCharacterModulus) throw ResourceLimit("dirichlet_character: modulus too large for a residue table");
  const u64 order = q - 1;
  const i64 jr = static_cast<i64>(reduce_signed(j, order));
  std::vector<UnitValue> table(q, UnitValue{0.0, 0.0});
  const u64 g = q == 2 ? 1 : least_primitive_root(q);
  u64 x = 1;
  for (u64 k = 0; k < order; ++k) {
    table[x] = root_of_unity(static_cast<i64>(mul_mod(static_cast<u64>(jr), k, order)), order);
    x = mul_mod(x, g, q);
  }
  return MultFunc(spec::Character{q, jr, std::move(table)});
}

MultFunc dirichlet_character_from_table(u64 q, std::vector<UnitValue> table) {
  check_table(q, table);
  return MultFunc(spec::Character{q, -1, std::move(table)});
}

MultFunc prime_table(std::map<u64, UnitValue> values, UnitValue fallback) {
  for (const auto& [p, z] : values) {
    if (!is_prime(p)) throw InvalidArgument("prime_table: key " + std::to_string(p) + " is not prime");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1.0 + kUnitTol)
      throw InvalidArgument("prime_table: value outside the unit disk at p = " + std::to_string(p));
  }
  if (!std::isfinite(fallback.real()) || !std::isfinite(fallback.imag()) || std::abs(fallback) > 1.0 + kUnitTol)
    throw InvalidArgument("prime_table: default value outside the unit disk");
  return MultFunc(spec::PrimeTable{std::move(values), fallback});
}

MultFunc load_prime_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("load_prime_table: cannot open " + path);
  std::map<u64, UnitValue> values;
  UnitValue fallback{1.0, 0.0};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    double re = 0, im = 0;
    if (!(ls >> re >> im)) throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected 'p re im'");
    std::string extra;
    if (ls >> extra) throw InvalidArgument(path + ":" + std::to_string(lineno) + ": trailing input");
    if (key == "default") {
      fallback = {re, im};
      continue;
    }
    std::size_t used = 0;
    u64 p = 0;
    try {
      p = std::stoull(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || key.empty() || key[0] == '-')
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": bad prime '" + key + "'");
    if (!values.emplace(p, UnitValue{re, im}).second)
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": duplicate prime " + key);
  }
  return prime_table(std::move(values), fallback);
}

MultFunc modify_character(const MultFunc& chi) {
  const auto* c = std::get_if<spec::Character>(&chi.node());
  if (!c) throw InvalidArgument("modify_character: argument is not a Dirichlet character");
  return MultFunc(spec::ModifiedCharacter{*c});
}

MultFunc product(const MultFunc& lhs, const MultFunc& rhs) { return MultFunc(spec::Product{{lhs, rhs}}); }

MultFunc power(const MultFunc& f, i64 j) { return MultFunc(spec::Power{std::make_shared<const MultFunc>(f), j}); }

MultFunc conjugate(const MultFunc& f) { return MultFunc(spec::Conjugate{std::make_shared<const MultFunc>(f)}); }

MultFunc dth_root(const MultFunc& f, u64 d) {
  if (d == 0) throw InvalidArgument("dth_root: d must be >= 1");
  if (!f.circle_valued()) throw InvalidArgument("dth_root: f must be circle-valued (it vanishes at some prime)");
  return MultFunc(spec::Root{std::make_shared<const MultFunc>(f), d});
}

MultFunc combine(CombineOp op, const std::vector<MultFunc>& args, i64 exponent) {
  switch (op) {
    case CombineOp::Product:
      if (args.empty()) throw InvalidArgument("combine: product needs at least one argument");
      return MultFunc(spec::Product{args});
    case CombineOp::Power:
      if (args.size() != 1) throw InvalidArgument("combine: power takes exactly one argument");
      return power(args[0], exponent);
    case CombineOp::Conjugate:
      if (args.size() != 1) throw InvalidArgument("combine: conjugate takes exactly one argument");
      return conjugate(args[0]);
  }
  throw InvalidArgument("combine: unknown operation");
}

namespace {

struct PeriodVisitor {
  std::optional<u64> operator()(const spec::One&) const { return 1; }
  std::optional<u64> operator()(const spec::Character& c) const { return c.modulus; }
  std::optional<u64> operator()(const spec::Product& p) const {
    u64 q = 1;
    for (const auto& g : p.factors) {
      const auto r = character_period(g);
      if (!r) return std::nullopt;
      q = std::lcm(q, *r);
    }
    return q;
  }
  std::optional<u64> operator()(const spec::Power& p) const {
    if (p.exponent == 0) return 1;
    return character_period(*p.base);
  }
  std::optional<u64> operator()(const spec::Conjugate& c) const { return character_period(*c.base); }
  template <class T>
  std::optional<u64> operator()(const T&) const {
    return std::nullopt;
  }
};

}  // namespace

std::optional<u64> character_period(const MultFunc& f) { return std::visit(PeriodVisitor{}, f.node()); }

double indicator_one_average(const MultFunc& f, u64 d, u64 n) {
  if (d == 0) throw InvalidArgument("indicator: d must be >= 1");
  const UnitValue z = f.at(n);
  UnitValue acc{0.0, 0.0};
  UnitValue w{1.0, 0.0};
  for (u64 j = 0; j < d; ++j) {
    acc += w;
    w *= z;
  }
  return acc.real() / static_cast<double>(d);
}

double indicator_one_mean(const MultFunc& f, u64 d, u64 n) {
  if (d == 0) throw InvalidArgument("indicator: d must be >= 1");
  const UnitValue z = f.at(n);
  if (!approx_equal(ipow(z, d), {1.0, 0.0}))
    throw InvalidArgument("indicator: f(" + std::to_string(n) + ") is not a " + std::to_string(d) + "-th root of unity");
  const double direct = approx_equal(z, {1.0, 0.0}) ? 1.0 : 0.0;
  if (std::abs(direct - indicator_one_average(f, d, n)) > kUnitTol)
    throw std::logic_error("indicator: root-of-unity average disagrees with direct comparison");
  return direct;
}

Decomposition decompose(const MultFunc& f, u64 d, const MultFunc& chi, double t) {
  if (d == 0) throw InvalidArgument("decompose: d must be >= 1");
  const MultFunc chi_mod = modify_character(chi);
  const MultFunc inner = combine(CombineOp::Product, {power(f, static_cast<i64>(d)), conjugate(chi_mod), archimedean(-t)});
  const MultFunc h = product(dth_root(inner, d), archimedean(t / static_cast<double>(d)));
  const MultFunc g = product(f, conjugate(h));
  return {g, h};
}

// ---------------------------------------------------------------------------

std::complex<double> AddFunc::at_prime_power(u64 p, u32 k) const {
  const auto it = values_.find({p, k});
  return it == values_.end() ? std::complex<double>{} : it->second;
}

std::complex<double> AddFunc::operator()(FactorView f) const {
  std::complex<double> s{};
  for (const auto& pp : f.factors) s += at_prime_power(pp.prime, pp.exponent);
  return s;
}

AddFunc AddFunc::restricted(double lo, double hi) const {
  std::map<std::pair<u64, u32>, std::complex<double>> out;
  for (const auto& [key, v] : values_) {
    const double p = static_cast<double>(key.first);
    if (p > lo && p <= hi) out.emplace(key, v);
  }
  return AddFunc(std::move(out));
}

AddFunc load_add_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("load_add_table: cannot open " + path);
  std::map<std::pair<u64, u32>, std::complex<double>> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string s; ls >> s;) tok.push_back(s);
    if (tok.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (tok.size() != 3 && tok.size() != 4) throw InvalidArgument(where + ": expected 'p re im' or 'p k re im'");
    try {
      const u64 p = std::stoull(tok[0]);
      const u32 k = tok.size() == 4 ? static_cast<u32>(std::stoul(tok[1])) : 1;
      const double re = std::stod(tok[tok.size() - 2]);
      const double im = std::stod(tok[tok.size() - 1]);
      if (!is_prime(p) || k == 0) throw InvalidArgument(where + ": key is not a prime power");
      values[{p, k}] = {re, im};
    } catch (const InvalidArgument&) {
      throw;
    } catch (const std::exception&) {
      throw InvalidArgument(where + ": malformed number");
    }
  }
  return AddFunc(std::move(values));
}

}  // namespace pythreg
