#include "pythreg/weights.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "pythreg/error.hpp"
#include "pythreg/parallel.hpp"

namespace pythreg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_turns(double x) {
  double r = x - std::round(x);
  if (r >= 0.5) r -= 1.0;
  return r;
}

}  // namespace

void validate(const WeightConfig& cfg) {
  if (!(cfg.delta > 0 && cfg.delta < 0.5)) throw InvalidArgument("weight config: delta must lie in (0, 1/2)");
  if (cfg.ell < 1 || cfg.ell_prime < 1) throw InvalidArgument("weight config: ell and ell' must be >= 1");
}

std::string to_string(WeightKind kind) { return kind == WeightKind::Hyperbolic ? "hyperbolic" : "elliptic"; }

WeightKind weight_kind_from_string(const std::string& s) {
  if (s == "hyperbolic") return WeightKind::Hyperbolic;
  if (s == "elliptic") return WeightKind::Elliptic;
  throw InvalidArgument("unknown weight kind '" + s + "' (hyperbolic or elliptic)");
}

double trapezoid_turns(double phi, double delta) {
  const double a = std::abs(phi);
  if (a <= delta / 2) return 1.0;
  if (a >= delta) return 0.0;
  return (delta - a) / (delta / 2);
}

double trapezoid(UnitValue z, double delta) {
  if (!(delta > 0 && delta < 0.5)) throw InvalidArgument("trapezoid: delta must lie in (0, 1/2)");
  if (std::abs(std::abs(z) - 1.0) > kUnitTol) throw InvalidArgument("trapezoid: z must lie on the unit circle");
  return trapezoid_turns(turns_of(z), delta);
}

double weight_phase(u64 m, u64 n, const WeightConfig& cfg) {
  const double lm = std::log(static_cast<double>(m)), ln = std::log(static_cast<double>(n));
  double top;
  if (cfg.kind == WeightKind::Hyperbolic) {
    top = std::log(static_cast<double>(m - n)) + std::log(static_cast<double>(m + n));
  } else {
    top = std::log(static_cast<double>(m) * static_cast<double>(m) + static_cast<double>(n) * static_cast<double>(n));
  }
  const double theta = std::log(static_cast<double>(cfg.ell)) + top - std::log(static_cast<double>(cfg.ell_prime)) - lm - ln;
  return reduce_turns(theta / kTwoPi);
}

double weight(u64 m, u64 n, const WeightConfig& cfg) {
  validate(cfg);
  if (m < 1 || n < 1) throw InvalidArgument("weight: m, n must be >= 1");
  if (cfg.kind == WeightKind::Hyperbolic && m <= n) return 0.0;
  return trapezoid_turns(weight_phase(m, n, cfg), cfg.delta);
}

ResonanceSlope resonance_slope(const WeightConfig& cfg) {
  validate(cfg);
  const double l = static_cast<double>(cfg.ell), lp = static_cast<double>(cfg.ell_prime);
  ResonanceSlope r;
  if (cfg.kind == WeightKind::Hyperbolic) {
    r.a = (lp + std::sqrt(lp * lp + 4 * l * l)) / (2 * l);
    return r;
  }
  double b = lp / l;
  while (b < 2.0 - 1e-12) {
    ++r.k;
    b = lp / l * std::exp(kTwoPi * static_cast<double>(r.k));
  }
  r.b = b;
  r.degenerate = std::abs(b - 2.0) <= 1e-12;
  r.a = (b + std::sqrt(std::max(0.0, b * b - 4))) / 2;
  return r;
}

double weight_density(const WeightConfig& cfg, u64 N) {
  validate(cfg);
  if (N < 100) throw InvalidArgument("weight_density: N must be >= 100");
  // log table for 1..2N; phases assembled from differences of logs
  std::vector<double> lg(2 * N + 1, 0.0);
  for (u64 i = 1; i <= 2 * N; ++i) lg[i] = std::log(static_cast<double>(i));
  const double base = std::log(static_cast<double>(cfg.ell)) - std::log(static_cast<double>(cfg.ell_prime));
  const bool hyper = cfg.kind == WeightKind::Hyperbolic;
  const double sum = parallel::band_reduce<double>(N, 64, 0.0, [&](std::size_t lo, std::size_t hi) {
    double s = 0;
    for (u64 m = lo + 1; m <= hi; ++m)
      for (u64 n = 1; n <= N; ++n) {
        double top;
        if (hyper) {
          if (m <= n) continue;
          top = lg[m - n] + lg[m + n];
        } else {
          top = std::log(static_cast<double>(m * m + n * n));
        }
        const double theta = base + top - lg[m] - lg[n];
        s += trapezoid_turns(reduce_turns(theta / kTwoPi), cfg.delta);
      }
    return s;
  });
  return sum / (static_cast<double>(N) * static_cast<double>(N));
}

std::string weight_density_csv_header() { return "kind,ell,ell_prime,delta,N,density"; }

std::string weight_density_csv_row(const WeightConfig& cfg, u64 N, double density) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s,%llu,%llu,%.17g,%llu,%.17g", to_string(cfg.kind).c_str(),
                static_cast<unsigned long long>(cfg.ell), static_cast<unsigned long long>(cfg.ell_prime), cfg.delta,
                static_cast<unsigned long long>(N), density);
  return buf;
}

// ---------------------------------------------------------------------------

Factorization FolnerSet::factorization(std::size_t i) const {
  Factorization f;
  f.n = values[i].value_or(0);
  for (std::size_t j = 0; j < primes.size(); ++j) f.factors.push_back({primes[j], elements[i][j]});
  return f;
}

FolnerSet folner_set(u64 K) {
  if (K < 2) throw InvalidArgument("folner_set: K must be >= 2");
  FolnerSet s;
  s.K = K;
  for (u32 p : primes_up_to(K)) s.primes.push_back(p);
  const std::size_t r = s.primes.size();
  unsigned __int128 size = 1;
  for (std::size_t j = 0; j < r; ++j) {
    size *= K;
    if (size > kFolnerSizeCap) throw ResourceLimit("folner_set: K^pi(K) exceeds 10^6");
  }
  s.elements.reserve(static_cast<std::size_t>(size));
  std::vector<u32> e(r, static_cast<u32>(K + 1));
  for (;;) {
    s.elements.push_back(e);
    std::size_t j = r;
    while (j > 0 && e[j - 1] == 2 * K) e[--j] = static_cast<u32>(K + 1);
    if (j == 0) break;
    ++e[j - 1];
  }
  s.values.reserve(s.elements.size());
  for (const auto& ev : s.elements) {
    unsigned __int128 acc = 1;
    bool fits = true;
    for (std::size_t j = 0; j < r && fits; ++j)
      for (u32 k = 0; k < ev[j] && fits; ++k) {
        acc *= s.primes[j];
        fits = acc <= (static_cast<unsigned __int128>(1) << 63);
      }
    s.values.push_back(fits ? std::optional<u64>(static_cast<u64>(acc)) : std::nullopt);
  }
  return s;
}

std::complex<double> folner_average(const MultFunc& f, const FolnerSet& set) {
  std::complex<double> s{};
  std::vector<PrimePower> buf(set.primes.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = 0; j < set.primes.size(); ++j) buf[j] = {set.primes[j], set.elements[i][j]};
    s += f(FactorView{0, buf});
  }
  return s / static_cast<double>(set.size());
}

std::complex<double> folner_average(const MultFunc& f, u64 K) { return folner_average(f, folner_set(K)); }

}  // namespace pythreg
