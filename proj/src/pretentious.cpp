#include "pythreg/pretentious.hpp"

#include <cmath>

#include "pythreg/error.hpp"
#include "pythreg/parallel.hpp"

namespace pythreg {

namespace {

constexpr u64 kPrimeRangeLimit = u64{1} << 40;

// Integer bounds for primes in the real interval (x, y].
std::pair<u64, u64> prime_bounds(double x, double y, const char* who) {
  if (!(x >= 0) || !(y >= x)) throw InvalidArgument(std::string(who) + ": need 0 <= x <= y");
  if (y >= static_cast<double>(kPrimeRangeLimit)) throw ResourceLimit(std::string(who) + ": y must be below 2^40");
  return {static_cast<u64>(std::floor(x)), static_cast<u64>(std::floor(y))};
}

std::complex<double> drift_sum(const MultFunc& f, const MultFunc& chi, double t, u64 K, u64 N, bool restricted,
                               const char* who) {
  if (K >= N) throw InvalidArgument(std::string(who) + ": need K < N");
  if (N >= kPrimeRangeLimit) throw ResourceLimit(std::string(who) + ": N must be below 2^40");
  std::complex<double> s{};
  for_each_prime(K, N, [&](u64 p) {
    if (restricted && p % 4 != 1) return;
    std::complex<double> z = f.at_prime(p) * std::conj(chi.at_prime(p));
    if (t != 0.0) z *= std::polar(1.0, -t * std::log(static_cast<double>(p)));
    s += (z - 1.0) / static_cast<double>(p);
  });
  return s;
}

}  // namespace

DistanceReport distance_squared(const MultFunc& f, const MultFunc& g, double x, double y, bool restricted) {
  const auto [lo, hi] = prime_bounds(x, y, "distance_squared");
  DistanceReport r{f.describe(), g.describe(), x, y, 0.0, restricted, 0};
  double s = 0;
  for_each_prime(lo, hi, [&](u64 p) {
    if (restricted && p % 4 != 1) return;
    const double term = 1.0 - (f.at_prime(p) * std::conj(g.at_prime(p))).real();
    s += std::max(0.0, term) / static_cast<double>(p);
    ++r.prime_count;
  });
  r.d_squared = s;
  return r;
}

double abs_distance(const MultFunc& f, const MultFunc& chi, double x, double y) {
  const auto [lo, hi] = prime_bounds(x, y, "abs_distance");
  double s = 0;
  for_each_prime(lo, hi, [&](u64 p) { s += std::abs(1.0 - f.at_prime(p) * std::conj(chi.at_prime(p))) / static_cast<double>(p); });
  return s;
}

std::complex<double> drift_F(const MultFunc& f, const MultFunc& chi, double t, u64 K, u64 N) {
  return drift_sum(f, chi, t, K, N, false, "drift_F");
}

std::complex<double> drift_G(const MultFunc& f, const MultFunc& chi, double t, u64 K, u64 N) {
  return 2.0 * drift_sum(f, chi, t, K, N, true, "drift_G");
}

std::complex<double> drift_H(const AddFunc& h, u64 K0, u64 N) {
  if (K0 >= N) throw InvalidArgument("drift_H: need K0 < N");
  // Only listed primes contribute, so there is no need to walk the range.
  std::complex<double> s{};
  for (const auto& [key, v] : h.values())
    if (key.second == 1 && key.first > K0 && key.first <= N) s += v / static_cast<double>(key.first);
  return 2.0 * s;
}

std::complex<double> mean_probe(const MultFunc& f, u64 a, u64 b, u64 N, MeanMode mode) {
  if (a < 1) throw InvalidArgument("mean_probe: a must be >= 1");
  if (N < 1) throw InvalidArgument("mean_probe: N must be >= 1");
  const auto prog = factorize_progression(a, b, N);
  const bool log_mode = mode == MeanMode::Logarithmic;
  const auto sum = parallel::band_reduce<std::complex<double>>(N, 1 << 14, {}, [&](std::size_t lo, std::size_t hi) {
    std::complex<double> s{};
    for (u64 n = lo + 1; n <= hi; ++n) {
      const auto z = f(prog.at(n));
      s += log_mode ? z / static_cast<double>(n) : z;
    }
    return s;
  });
  if (!log_mode) return sum / static_cast<double>(N);
  double harmonic = 0;
  for (u64 n = 1; n <= N; ++n) harmonic += 1.0 / static_cast<double>(n);
  return sum / harmonic;
}

}  // namespace pythreg
