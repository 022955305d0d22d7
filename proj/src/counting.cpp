#include "pythreg/counting.hpp"

#include <cstdio>
#include <numeric>

#include "pythreg/error.hpp"
#include "pythreg/parallel.hpp"

namespace pythreg {

namespace {

void check_pair_prime(u64 p, const char* who) {
  if (p < 2 || !is_prime(p)) throw InvalidArgument(std::string(who) + ": " + std::to_string(p) + " is not prime");
  if (p % 4 != 1) throw InvalidArgument(std::string(who) + ": " + std::to_string(p) + " is not 1 mod 4");
}

u64 count_cells(const GridFactorSieve& grid, const std::function<bool(FactorView)>& pred) {
  const u64 N = grid.N();
  return parallel::band_reduce<u64>(N, std::max<u64>(1, 4096 / N), 0, [&](std::size_t lo, std::size_t hi) {
    u64 c = 0;
    for (u64 n = lo + 1; n <= hi; ++n)
      for (u64 m = 1; m <= N; ++m) c += pred(grid.cell(m, n)) ? 1 : 0;
    return c;
  });
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double w_pair_empirical(const GridFactorSieve& grid, u64 p, u64 q) {
  check_pair_prime(p, "w_pair_empirical");
  check_pair_prime(q, "w_pair_empirical");
  const u64 Q = static_cast<u64>(grid.params().Q);
  if (std::gcd(p * q, Q) != 1) throw InvalidArgument("w_pair_empirical: need gcd(pq, Q) = 1");
  const u64 hits = count_cells(grid, [&](FactorView v) { return exponent_of(v, p) == 1 && exponent_of(v, q) == 1; });
  const double N = static_cast<double>(grid.N());
  return static_cast<double>(hits) / (N * N);
}

double w_pair_empirical(u64 N, i64 Q, i64 a, i64 b, u64 p, u64 q) {
  check_pair_prime(p, "w_pair_empirical");
  check_pair_prime(q, "w_pair_empirical");
  return w_pair_empirical(grid_quadratic_factorize(Q, a, b, N), p, q);
}

double w_pair_closed_form(u64 p, u64 q) {
  check_pair_prime(p, "w_pair_closed_form");
  check_pair_prime(q, "w_pair_closed_form");
  const double P = static_cast<double>(p), R = static_cast<double>(q);
  const double sp = (1 - 1 / P) * (1 - 1 / P);
  if (p == q) return 2 / P * sp;
  return 4 / (P * R) * sp * (1 - 1 / R) * (1 - 1 / R);
}

CountingReport w_pair_report(const GridFactorSieve& grid, u64 p, u64 q) {
  CountingReport r;
  const auto& g = grid.params();
  r.N = g.N;
  r.Q = g.Q;
  r.a = g.a;
  r.b = g.b;
  r.p = p;
  r.q = q;
  r.empirical = w_pair_empirical(grid, p, q);
  r.closed_form = w_pair_closed_form(p, q);
  r.abs_error = std::abs(r.empirical - *r.closed_form);
  return r;
}

CountingReport w_divisor(const GridFactorSieve& grid, u64 l) {
  if (l < 1) throw InvalidArgument("w_divisor: l must be >= 1");
  if (r2(l) == 0) throw InvalidArgument("w_divisor: " + std::to_string(l) + " is not a sum of two squares");
  CountingReport r;
  const auto& g = grid.params();
  r.N = g.N;
  r.Q = g.Q;
  r.a = g.a;
  r.b = g.b;
  r.p = l;
  const u64 hits = count_cells(grid, [&](FactorView v) { return v.n % l == 0; });
  const double N = static_cast<double>(g.N);
  r.empirical = static_cast<double>(hits) / (N * N);
  const double Q2 = static_cast<double>(g.Q) * static_cast<double>(g.Q);
  r.bound_rhs = Q2 / static_cast<double>(l);
  r.ratio = r.empirical * static_cast<double>(l) / Q2;
  return r;
}

CountingReport w_divisor(u64 N, i64 Q, i64 a, i64 b, u64 l) {
  if (l < 1) throw InvalidArgument("w_divisor: l must be >= 1");
  if (r2(l) == 0) throw InvalidArgument("w_divisor: " + std::to_string(l) + " is not a sum of two squares");
  return w_divisor(grid_quadratic_factorize(Q, a, b, N), l);
}

std::string counting_csv_header() { return "N,Q,a,b,p,q,empirical,closed_form,abs_error"; }

std::string counting_csv_row(const CountingReport& r) {
  return std::to_string(r.N) + "," + std::to_string(r.Q) + "," + std::to_string(r.a) + "," + std::to_string(r.b) + "," +
         std::to_string(r.p) + "," + std::to_string(r.q) + "," + num(r.empirical) + "," +
         (r.closed_form ? num(*r.closed_form) : "") + "," + (r.closed_form ? num(r.abs_error) : "");
}

}  // namespace pythreg
