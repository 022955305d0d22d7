#pragma once

#include <complex>
#include <string>

#include "pythreg/multfunc.hpp"

namespace pythreg {

struct DistanceReport {
  std::string f_desc;
  std::string g_desc;
  double x = 0;
  double y = 0;
  double d_squared = 0;
  bool restricted = false;  // only p = 1 mod 4
  u64 prime_count = 0;
};

// Sum over primes x < p <= y of (1 - Re f(p) conj g(p)) / p. Needs
// 0 <= x < y < 2^40.
DistanceReport distance_squared(const MultFunc& f, const MultFunc& g, double x, double y, bool restricted = false);

// Sum over x < p <= y of |1 - f(p) conj chi(p)| / p.
double abs_distance(const MultFunc& f, const MultFunc& chi, double x, double y);

// F_N = sum_{K<p<=N} (f(p) conj chi(p) p^{-it} - 1) / p.
std::complex<double> drift_F(const MultFunc& f, const MultFunc& chi, double t, u64 K, u64 N);
// G_N = 2 sum_{K<p<=N, p=1 mod 4} (f(p) conj chi(p) p^{-it} - 1) / p.
std::complex<double> drift_G(const MultFunc& f, const MultFunc& chi, double t, u64 K, u64 N);
// H_N = 2 sum_{K0<p<=N} h(p) / p.
std::complex<double> drift_H(const AddFunc& h, u64 K0, u64 N);

enum class MeanMode { Cesaro, Logarithmic };

// Cesaro or logarithmic mean of f(an+b) over 1 <= n <= N.
std::complex<double> mean_probe(const MultFunc& f, u64 a, u64 b, u64 N, MeanMode mode);

}  // namespace pythreg
