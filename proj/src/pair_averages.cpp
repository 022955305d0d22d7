#include "pythreg/pair_averages.hpp"

#include <cmath>
#include <cstdio>

#include "pythreg/error.hpp"
#include "pythreg/parallel.hpp"

namespace pythreg {

namespace {

using cplx = std::complex<double>;

struct Sums {
  cplx value{};
  double mass = 0;
  Sums& operator+=(const Sums& o) {
    value += o.value;
    mass += o.mass;
    return *this;
  }
};

void check_common(u64 Q, u64 N, const WeightConfig& cfg, WeightKind want, const char* who) {
  validate(cfg);
  if (Q < 1) throw InvalidArgument(std::string(who) + ": Q must be >= 1");
  if (N < 10) throw InvalidArgument(std::string(who) + ": N must be >= 10");
  if (cfg.kind != want) throw InvalidArgument(std::string(who) + ": wrong weight kind");
}

// f(Q s + 1) for s = 1..count, index 0 unused.
std::vector<cplx> shifted_values(const MultFunc& f, u64 Q, u64 count) {
  if (static_cast<unsigned __int128>(Q) * count + 1 > UINT64_MAX) throw ResourceLimit("pair average: Q*s+1 overflows 64 bits");
  const auto prog = factorize_progression(Q, 1, count);
  std::vector<cplx> out(count + 1);
  for (u64 s = 1; s <= count; ++s) out[s] = f(prog.at(s));
  return out;
}

// f(n) for n = 1..N, index 0 unused.
std::vector<cplx> plain_values(const MultFunc& f, u64 N) {
  const auto prog = factorize_progression(1, 0, N);
  std::vector<cplx> out(N + 1);
  for (u64 n = 1; n <= N; ++n) out[n] = f(prog.at(n));
  return out;
}

Sums elliptic_sum(const MultFunc& f, u64 Q, const WeightConfig& cfg, u64 N, bool second_has_Q) {
  if (Q > (u64{1} << 32)) throw ResourceLimit("typeII average: Q too large for the grid");
  const auto grid = grid_quadratic_factorize(static_cast<i64>(Q), 1, 0, N);
  const auto A = shifted_values(f, Q, N);
  const auto B = plain_values(f, N);
  const cplx fl = f.at(cfg.ell);
  const cplx second_const = f.at(cfg.ell_prime) * (second_has_Q ? f.at(Q) : cplx{1.0, 0.0});
  return parallel::band_reduce<Sums>(N, 16, Sums{}, [&](std::size_t lo, std::size_t hi) {
    Sums s;
    for (u64 n = lo + 1; n <= hi; ++n)
      for (u64 m = 1; m <= N; ++m) {
        const double w = weight(m, n, cfg);
        if (w == 0.0) continue;
        s.mass += w;
        s.value += w * fl * f(grid.cell(m, n)) * std::conj(second_const * A[m] * B[n]);
      }
    return s;
  });
}

}  // namespace

PairAverageReport typeI_average(const MultFunc& f, u64 Q, const WeightConfig& cfg, u64 N) {
  check_common(Q, N, cfg, WeightKind::Hyperbolic, "typeI_average");
  PairAverageReport r;
  r.kind = PairKind::TypeI;
  r.f_desc = f.describe();
  r.Q = Q;
  r.N = N;
  r.cfg = cfg;
  r.runtime_cells = N * N;

  // (Qm+1)^2 - (Qn)^2 = (Q(m-n)+1)(Q(m+n)+1) and the second argument splits
  // as ell' (Qm+1) Q n, so every factor is a short progression value.
  const auto A = shifted_values(f, Q, 2 * N);
  const auto B = plain_values(f, N);
  const cplx fl = f.at(cfg.ell);
  const cplx second_const = f.at(cfg.ell_prime) * f.at(Q);
  const Sums s = parallel::band_reduce<Sums>(N, 16, Sums{}, [&](std::size_t lo, std::size_t hi) {
    Sums acc;
    for (u64 n = lo + 1; n <= hi; ++n)
      for (u64 m = n + 1; m <= N; ++m) {
        const double w = weight(m, n, cfg);
        if (w == 0.0) continue;
        acc.mass += w;
        acc.value += w * fl * A[m - n] * A[m + n] * std::conj(second_const * A[m] * B[n]);
      }
    return acc;
  });
  const double cells = static_cast<double>(N) * static_cast<double>(N);
  r.value = s.value / cells;
  r.weight_mass = s.mass / cells;
  return r;
}

PairAverageReport typeII_average(const MultFunc& f, u64 Q, const WeightConfig& cfg, u64 N) {
  check_common(Q, N, cfg, WeightKind::Elliptic, "typeII_average");
  PairAverageReport r;
  r.kind = PairKind::TypeII;
  r.f_desc = f.describe();
  r.Q = Q;
  r.N = N;
  r.cfg = cfg;
  r.runtime_cells = N * N;
  const Sums s = elliptic_sum(f, Q, cfg, N, true);
  const double cells = static_cast<double>(N) * static_cast<double>(N);
  r.value = s.value / cells;
  r.weight_mass = s.mass / cells;
  return r;
}

std::complex<double> folner_q_average(const MultFunc& f, const WeightConfig& cfg, u64 K, u64 N, PairKind kind) {
  const FolnerSet set = folner_set(K);
  cplx total{};
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!set.values[i]) throw ResourceLimit("folner_q_average: an element of Phi_K exceeds 2^63");
    const u64 Q = *set.values[i];
    total += kind == PairKind::TypeI ? typeI_average(f, Q, cfg, N).value : typeII_average(f, Q, cfg, N).value;
  }
  return total / static_cast<double>(set.size());
}

double q_stability(const MultFunc& f, const MultFunc& chi, double t, const WeightConfig& cfg, u64 K, u64 N) {
  if (!character_period(chi)) throw InvalidArgument("q_stability: chi must be a Dirichlet character");
  check_common(1, N, cfg, WeightKind::Elliptic, "q_stability");
  const FolnerSet set = folner_set(K);
  std::vector<cplx> L;
  L.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!set.values[i]) throw ResourceLimit("q_stability: an element of Phi_K exceeds 2^63");
    const u64 Q = *set.values[i];
    const Sums s = elliptic_sum(f, Q, cfg, N, false);
    const cplx tw = t == 0.0 ? cplx{1.0, 0.0} : std::polar(1.0, -t * std::log(static_cast<double>(Q)));
    L.push_back(tw * s.value / (static_cast<double>(N) * static_cast<double>(N)));
  }
  double worst = 0;
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = i + 1; j < L.size(); ++j) worst = std::max(worst, std::abs(L[i] - L[j]));
  return worst;
}

std::complex<double> dlms_log_average(const MultFunc& f, u64 N) {
  if (N < 10) throw InvalidArgument("dlms_log_average: N must be >= 10");
  // The double sum factorizes: f(n(n+1)) = f(n) f(n+1) and f(m^2) = f(m)^2.
  const auto spf = build_spf_table(N + 1);
  std::vector<cplx> v(N + 2);
  for (u64 n = 1; n <= N + 1; ++n) v[n] = f(spf.factorize(n).view());
  cplx sn{}, sm{};
  double h = 0;
  for (u64 n = 1; n <= N; ++n) {
    const double inv = 1.0 / static_cast<double>(n);
    sn += v[n] * v[n + 1] * inv;
    sm += std::conj(v[n] * v[n]) * inv;
    h += inv;
  }
  return sn * sm / (h * h);
}

std::string to_string(PairKind kind) { return kind == PairKind::TypeI ? "typeI" : "typeII"; }

std::string pair_csv_header() { return "kind,f,Q,ell,ell_prime,delta,N,value_re,value_im,weight_mass"; }

std::string pair_csv_row(const PairAverageReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, ",%llu,%llu,%llu,%.17g,%llu,%.17g,%.17g,%.17g", static_cast<unsigned long long>(r.Q),
                static_cast<unsigned long long>(r.cfg.ell), static_cast<unsigned long long>(r.cfg.ell_prime), r.cfg.delta,
                static_cast<unsigned long long>(r.N), r.value.real(), r.value.imag(), r.weight_mass);
  return to_string(r.kind) + "," + r.f_desc + buf;
}

}  // namespace pythreg
