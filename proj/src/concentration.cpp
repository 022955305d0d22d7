#include "pythreg/concentration.hpp"

#include <cmath>
#include <numeric>

#include "pythreg/error.hpp"
#include "pythreg/parallel.hpp"
#include "pythreg/pretentious.hpp"

namespace pythreg {

namespace {

constexpr std::size_t kBand = 4096;

u64 period_of(const MultFunc& chi, const char* who) {
  const auto q = character_period(chi);
  if (!q) throw InvalidArgument(std::string(who) + ": chi must be a Dirichlet character (or a product of characters)");
  return *q;
}

// Product of the primes p <= K, or 0 on overflow.
u64 primorial(u64 K) {
  unsigned __int128 acc = 1;
  for (u64 p : primes_up_to(K)) {
    acc *= p;
    if (acc > UINT64_MAX) return 0;
  }
  return static_cast<u64>(acc);
}

void check_linear(u64 q, u64 K, u64 Q, u64 N, const char* who) {
  if (K < 1) throw InvalidArgument(std::string(who) + ": K must be >= 1");
  if (N < 10) throw InvalidArgument(std::string(who) + ": N must be >= 10");
  if (Q < 1) throw InvalidArgument(std::string(who) + ": Q must be >= 1");
  const u64 prim = primorial(K);
  if (prim == 0 || Q % prim != 0 || Q % q != 0)
    throw InvalidArgument(std::string(who) + ": need q and every prime p <= K to divide Q");
}

std::complex<double> twist(double t, double log_value) {
  return t == 0.0 ? std::complex<double>{1.0, 0.0} : std::polar(1.0, t * log_value);
}

double dist(const MultFunc& f, const MultFunc& target, double x, double y, bool restricted) {
  if (y <= x) return 0.0;
  return std::sqrt(distance_squared(f, target, x, y, restricted).d_squared);
}

void finish(ConcentrationReport& r) {
  r.bound_total = 0;
  for (const auto& [name, v] : r.bound_terms) r.bound_total += v;
  r.ratio = r.lhs / r.bound_total;
  if (std::abs(r.drift) > 1.001) r.flags.push_back("drift modulus above 1.001");
}

}  // namespace

bool is_full_smooth_modulus(u64 Q, u64 K0) {
  if (Q < 1) return false;
  u64 rest = Q;
  for (u64 p : primes_up_to(std::max<u64>(K0, 2))) {
    if (p > K0) break;
    if (rest % p != 0) return false;
    while (rest % p == 0) rest /= p;
  }
  return rest == 1;
}

ConcentrationReport linear_concentration(const MultFunc& f, const MultFunc& chi, double t, u64 K, u64 Q, u64 N,
                                         const LinearOptions& opt) {
  const u64 q = period_of(chi, "linear_concentration");
  check_linear(q, K, Q, N, "linear_concentration");
  if (static_cast<unsigned __int128>(Q) * N + 1 > UINT64_MAX) throw ResourceLimit("linear_concentration: QN+1 overflows");

  ConcentrationReport r;
  r.kind = "linear";
  r.f_desc = f.describe();
  r.chi_desc = chi.describe();
  r.t = t;
  r.K = K;
  r.Q = Q;
  r.N = N;
  r.drift = K < N ? std::exp(drift_F(f, chi, t, K, N)) : std::complex<double>{1.0, 0.0};

  const auto prog = factorize_progression(Q, 1, N);
  const auto drift = r.drift;
  const double sum = parallel::band_reduce<double>(N, kBand, 0.0, [&](std::size_t lo, std::size_t hi) {
    double s = 0;
    for (u64 n = lo + 1; n <= hi; ++n)
      s += std::abs(f(prog.at(n)) - twist(t, std::log(static_cast<double>(Q * n))) * drift);
    return s;
  });
  r.lhs = sum / static_cast<double>(N);

  r.truncation = opt.tail_limit ? opt.tail_limit : Q * N + 1;
  const MultFunc target = product(chi, archimedean(t));
  r.bound_terms = {{"D(K,tail)", dist(f, target, static_cast<double>(K), static_cast<double>(r.truncation), false)},
                   {"K^-1/2", 1.0 / std::sqrt(static_cast<double>(K))}};
  finish(r);
  return r;
}

ConcentrationReport shifted_linear_concentration(const MultFunc& f, const MultFunc& chi, double t, u64 K, u64 Q, i64 l1,
                                                 i64 l2, u64 N, const LinearOptions& opt) {
  const u64 q = period_of(chi, "shifted_linear_concentration");
  check_linear(q, K, Q, N, "shifted_linear_concentration");
  if (l1 == 0 && l2 == 0) throw InvalidArgument("shifted_linear_concentration: (l1, l2) must not be (0, 0)");
  const u64 l = static_cast<u64>(std::abs(l1)) + static_cast<u64>(std::abs(l2));
  const u64 lN = l * N;
  if (static_cast<unsigned __int128>(Q) * lN + 1 > UINT64_MAX) throw ResourceLimit("shifted_linear_concentration: Q l N + 1 overflows");

  ConcentrationReport r;
  r.kind = "shifted_linear";
  r.f_desc = f.describe();
  r.chi_desc = chi.describe();
  r.t = t;
  r.K = K;
  r.Q = Q;
  r.N = N;
  r.drift = K < lN ? std::exp(drift_F(f, chi, t, K, lN)) : std::complex<double>{1.0, 0.0};

  // Deviation for every possible s = l1 m + l2 n in [1, lN].
  const auto prog = factorize_progression(Q, 1, lN);
  std::vector<double> dev(lN + 1, 0.0);
  for (u64 s = 1; s <= lN; ++s)
    dev[s] = std::abs(f(prog.at(s)) - twist(t, std::log(static_cast<double>(Q * s))) * r.drift);

  const double sum = parallel::band_reduce<double>(N, 64, 0.0, [&](std::size_t lo, std::size_t hi) {
    double acc = 0;
    for (u64 m = lo + 1; m <= hi; ++m)
      for (u64 n = 1; n <= N; ++n) {
        const i64 s = l1 * static_cast<i64>(m) + l2 * static_cast<i64>(n);
        if (s >= 1) acc += dev[static_cast<u64>(s)];
      }
    return acc;
  });
  r.lhs = sum / (static_cast<double>(N) * static_cast<double>(N));

  r.truncation = opt.tail_limit ? opt.tail_limit : Q * lN + 1;
  const MultFunc target = product(chi, archimedean(t));
  const double scale = 2.0 * static_cast<double>(l);
  r.bound_terms = {{"2l*D(K,tail)", scale * dist(f, target, static_cast<double>(K), static_cast<double>(r.truncation), false)},
                   {"2l*K^-1/2", scale / std::sqrt(static_cast<double>(K))}};
  finish(r);
  return r;
}

ConcentrationReport quadratic_concentration(const MultFunc& f, const MultFunc& chi, double t, u64 K0, u64 Q, i64 a,
                                            i64 b, u64 N, const QuadraticOptions& opt) {
  const u64 q = period_of(chi, "quadratic_concentration");
  if (K0 < 1) throw InvalidArgument("quadratic_concentration: K0 must be >= 1");
  if (!is_full_smooth_modulus(Q, K0))
    throw InvalidArgument("quadratic_concentration: Q must be a product of p^{a_p}, a_p >= 1, over exactly the primes p <= K0");
  if (Q % q != 0) throw InvalidArgument("quadratic_concentration: q must divide Q");
  if (Q > static_cast<u64>(INT64_MAX)) throw ResourceLimit("quadratic_concentration: Q too large");
  const i64 Qs = static_cast<i64>(Q);
  if (a < -Qs || a > Qs || b < -Qs || b > Qs) throw InvalidArgument("quadratic_concentration: need -Q <= a,b <= Q");
  const u64 s2 = static_cast<u64>(a * a + b * b);
  if (s2 == 0 || std::gcd(s2, Q) != 1) throw InvalidArgument("quadratic_concentration: need gcd(a^2+b^2, Q) = 1");

  ConcentrationReport r;
  r.kind = "quadratic";
  r.f_desc = f.describe();
  r.chi_desc = chi.describe();
  r.t = t;
  r.K = K0;
  r.Q = Q;
  r.N = N;

  const auto grid = grid_quadratic_factorize(Qs, a, b, N);
  const std::complex<double> c = chi.at(s2);
  r.drift = K0 < N ? std::exp(drift_G(f, chi, t, K0, N)) : std::complex<double>{1.0, 0.0};
  const auto target_const = c * r.drift;

  const double sum = parallel::band_reduce<double>(N, std::max<u64>(1, kBand / N), 0.0, [&](std::size_t lo, std::size_t hi) {
    double acc = 0;
    for (u64 n = lo + 1; n <= hi; ++n)
      for (u64 m = 1; m <= N; ++m) {
        const FactorView v = grid.cell(m, n);
        acc += std::abs(f(v) - target_const * twist(t, std::log(static_cast<double>(v.n))));
      }
    return acc;
  });
  r.lhs = sum / (static_cast<double>(N) * static_cast<double>(N));

  const unsigned __int128 tail = static_cast<unsigned __int128>(3) * Q * Q * N * N;
  r.truncation = opt.tail_limit ? opt.tail_limit : (tail > UINT64_MAX ? UINT64_MAX : static_cast<u64>(tail));
  const MultFunc target = product(chi, archimedean(t));
  const double rootN = std::sqrt(static_cast<double>(N));
  const double Qd = static_cast<double>(Q);
  const double d_low = dist(f, target, static_cast<double>(K0), rootN, true);
  r.bound_terms = {
      {"(D1+D1^2)(K0,sqrtN)", d_low + d_low * d_low},
      {"Q^2*D1(N,3Q^2N^2)", Qd * Qd * dist(f, target, static_cast<double>(N), static_cast<double>(r.truncation), true)},
      {"Q*D1(sqrtN,N)", Qd * dist(f, target, rootN, static_cast<double>(N), true)},
      {"K0^-1/2", 1.0 / std::sqrt(static_cast<double>(K0))}};
  if (N < Q * Q) r.flags.push_back("N < Q^2: outside the trusted regime");
  finish(r);
  return r;
}

TkReport tk_additive(const AddFunc& h, u64 K0, u64 Q, i64 a, i64 b, u64 N) {
  if (!is_full_smooth_modulus(Q, K0))
    throw InvalidArgument("tk_additive: Q must be a product of p^{a_p}, a_p >= 1, over exactly the primes p <= K0");
  if (N < 2) throw InvalidArgument("tk_additive: N must be >= 2");
  for (const auto& [key, v] : h.values()) {
    const auto [p, k] = key;
    if (v == std::complex<double>{}) continue;
    if (k >= 2) throw InvalidArgument("tk_additive: h(p^k) must vanish for k >= 2");
    if (p <= K0 || p > N) throw InvalidArgument("tk_additive: h(p) must vanish for p <= K0 and p > N");
    if (p % 4 == 3) throw InvalidArgument("tk_additive: h(p) must vanish for p = 3 mod 4");
    if (std::abs(v) > 1.0 + kUnitTol) throw InvalidArgument("tk_additive: h must be bounded by 1 on primes");
  }
  if (Q > static_cast<u64>(INT64_MAX)) throw ResourceLimit("tk_additive: Q too large");

  TkReport r;
  r.K0 = K0;
  r.Q = Q;
  r.a = a;
  r.b = b;
  r.N = N;
  const auto grid = grid_quadratic_factorize(static_cast<i64>(Q), a, b, N);
  r.H_N = K0 < N ? drift_H(h, K0, N) : std::complex<double>{};

  const double rootN = std::sqrt(static_cast<double>(N));
  const AddFunc h1 = h.restricted(0.0, rootN);

  // Per band: sum |h(v) - H_N|^2, sum h1(v), and the number of cells with
  // p || v for every prime in the support of h1.
  std::vector<u64> support;
  for (const auto& [key, v] : h1.values())
    if (key.second == 1) support.push_back(key.first);

  struct Partial {
    double var = 0;
    std::complex<double> mean{};
    std::vector<u64> exact;
    Partial& operator+=(const Partial& o) {
      var += o.var;
      mean += o.mean;
      if (exact.size() < o.exact.size()) exact.resize(o.exact.size(), 0);
      for (std::size_t i = 0; i < o.exact.size(); ++i) exact[i] += o.exact[i];
      return *this;
    }
  };
  const Partial total = parallel::band_reduce<Partial>(N, std::max<u64>(1, kBand / N), Partial{}, [&](std::size_t lo, std::size_t hi) {
    Partial part;
    part.exact.assign(support.size(), 0);
    for (u64 n = lo + 1; n <= hi; ++n)
      for (u64 m = 1; m <= N; ++m) {
        const FactorView v = grid.cell(m, n);
        part.var += std::norm(h(v) - r.H_N);
        part.mean += h1(v);
        for (std::size_t i = 0; i < support.size(); ++i)
          if (exponent_of(v, support[i]) == 1) ++part.exact[i];
      }
    return part;
  });

  const double cells = static_cast<double>(N) * static_cast<double>(N);
  r.variance_lhs = total.var / cells;
  r.mean_h1 = total.mean / cells;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double w = static_cast<double>(i < total.exact.size() ? total.exact[i] : 0) / cells;
    r.weighted_h1 += h1.at_prime_power(support[i], 1) * w;
  }
  r.exact_mean_check = std::abs(r.mean_h1 - r.weighted_h1);

  double low = 0, high = 0;
  for (const auto& [key, v] : h.values()) {
    if (key.second != 1) continue;
    const double p = static_cast<double>(key.first);
    if (p > static_cast<double>(K0) && p <= rootN) low += std::norm(v) / p;
    if (p > rootN && p <= static_cast<double>(N)) high += std::norm(v) / p;
  }
  const double Qd = static_cast<double>(Q);
  r.bound_terms = {{"D^2(h;K0,sqrtN)", low}, {"Q^2*D^2(h;sqrtN,N)", Qd * Qd * high}, {"K0^-1", 1.0 / static_cast<double>(std::max<u64>(K0, 1))}};
  for (const auto& [name, v] : r.bound_terms) r.bound_total += v;
  r.ratio = r.variance_lhs / r.bound_total;
  return r;
}

}  // namespace pythreg
