#include <array>
#include <map>
#include <numeric>

#include "doctest.h"
#include "gen.hpp"
#include "pythreg/error.hpp"
#include "pythreg/factor.hpp"

using namespace pythreg;

namespace {

std::vector<PrimePower> pp(std::initializer_list<std::pair<u64, u32>> l) {
  std::vector<PrimePower> out;
  for (auto [p, e] : l) out.push_back({p, e});
  return out;
}

void check_factorization(FactorView f, u64 n) {
  u64 prod = 1;
  u64 last = 1;
  for (const auto& x : f.factors) {
    CHECK(is_prime(x.prime));
    CHECK(x.exponent >= 1);
    CHECK(x.prime > last);
    last = x.prime;
    for (u32 i = 0; i < x.exponent; ++i) prod *= x.prime;
  }
  CHECK(prod == n);
}

}  // namespace

TEST_CASE("spf table for small limits") {
  const SpfTable t = build_spf_table(10);
  const std::map<u64, u32> want{{2, 2}, {3, 3}, {4, 2}, {5, 5}, {6, 2}, {7, 7}, {8, 2}, {9, 3}, {10, 2}};
  for (auto [n, s] : want) CHECK(t.spf(n) == s);
  CHECK(build_spf_table(2).spf(2) == 2);
  CHECK_THROWS_AS(build_spf_table(1), InvalidArgument);
  CHECK_THROWS_AS(build_spf_table((u64{1} << 32) + 1), ResourceLimit);
}

TEST_CASE("spf table invariants up to 10^5") {
  const SpfTable t = build_spf_table(100000);
  for (u64 n = 2; n <= 100000; ++n) {
    const u64 s = t.spf(n);
    REQUIRE(n % s == 0);
    REQUIRE(is_prime(s));
    if (is_prime(n)) REQUIRE(s == n);
  }
}

TEST_CASE("factorize with a prime list") {
  const auto primes = primes_up_to(100);
  CHECK(factorize(841, primes).factors == pp({{29, 2}}));
  CHECK(factorize(1, primes).factors.empty());
  CHECK(factorize(720, primes).factors == pp({{2, 4}, {3, 2}, {5, 1}}));
  const std::vector<u32> short_list{2, 3, 5};
  CHECK_THROWS_AS(factorize(49 * 53, short_list), InvalidArgument);
}

TEST_CASE("factorize is exact on every n up to 10^4") {
  const SpfTable t = build_spf_table(10000);
  for (u64 n = 1; n <= 10000; ++n) {
    const Factorization f = factorize(n);
    check_factorization(f, n);
    if (n >= 2) REQUIRE(f == t.factorize(n));
  }
}

TEST_CASE("factorize on sampled values up to 10^6 and large 64-bit values") {
  gen::Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const u64 n = rng.uniform(1, 1000000);
    check_factorization(factorize(n), n);
  }
  const u64 big = 4294967291ULL * 4294967279ULL;  // two primes near 2^32
  const Factorization f = factorize(big);
  CHECK(f.factors == pp({{4294967279ULL, 1}, {4294967291ULL, 1}}));
  CHECK(factorize(18446744073709551557ULL).factors == pp({{18446744073709551557ULL, 1}}));
  CHECK_THROWS_AS(factorize(0), InvalidArgument);
}

TEST_CASE("square root of -1 modulo primes") {
  CHECK(sqrt_minus_one(5) == 2);
  CHECK(sqrt_minus_one(13) == 5);
  CHECK_THROWS_AS(sqrt_minus_one(7), InvalidArgument);
  for (u64 p : primes_up_to(100000)) {
    if (p % 4 != 1) continue;
    const u64 r = sqrt_minus_one(p);
    REQUIRE(r <= (p - 1) / 2);
    REQUIRE((r * r + 1) % p == 0);
  }
}

TEST_CASE("grid examples") {
  const auto g = grid_quadratic_factorize(1, 0, 0, 2);
  CHECK(g.cell(2, 1).factors[0].prime == 5);
  CHECK(g.value(2, 1) == 5);
  const auto g10 = grid_quadratic_factorize(1, 0, 0, 10);
  const auto c = g10.cell(6, 8);
  CHECK(std::vector<PrimePower>(c.factors.begin(), c.factors.end()) == pp({{2, 2}, {5, 2}}));
  const auto g30 = grid_quadratic_factorize(30, 1, 0, 20);
  for (u64 m = 1; m <= 20; ++m)
    for (u64 n = 1; n <= 20; ++n)
      for (const auto& x : g30.cell(m, n).factors) REQUIRE(x.prime > 5);
}

TEST_CASE("grid agrees cell by cell with per-integer factorization") {
  const std::vector<std::array<i64, 3>> configs{{1, 0, 0}, {12, 1, 0}, {30, 1, 0}, {7, -3, 2}};
  for (auto [Q, a, b] : configs) {
    const auto g = grid_quadratic_factorize(Q, a, b, 50);
    for (u64 m = 1; m <= 50; ++m) {
      for (u64 n = 1; n <= 50; ++n) {
        const i64 x = Q * static_cast<i64>(m) + a;
        const i64 y = Q * static_cast<i64>(n) + b;
        const u64 v = static_cast<u64>(x * x + y * y);
        REQUIRE(g.value(m, n) == v);
        const FactorView c = g.cell(m, n);
        REQUIRE(c.n == v);
        const Factorization want = factorize(v);
        REQUIRE(std::vector<PrimePower>(c.factors.begin(), c.factors.end()) == want.factors);
      }
    }
  }
}

TEST_CASE("grid parameter validation") {
  CHECK_THROWS_AS(grid_quadratic_factorize(0, 0, 0, 5), InvalidArgument);
  CHECK_THROWS_AS(grid_quadratic_factorize(5, 6, 0, 5), InvalidArgument);
  CHECK_THROWS_AS(grid_quadratic_factorize(5, -5, -5, 5), InvalidArgument);
  CHECK_THROWS_AS(grid_quadratic_factorize(1, 0, 0, u64{1} << 33), ResourceLimit);
}

TEST_CASE("grid with random parameters matches direct factorization") {
  gen::Rng rng(7);
  for (int trial = 0; trial < 15; ++trial) {
    const i64 Q = static_cast<i64>(rng.uniform(1, 60));
    const i64 a = static_cast<i64>(rng.uniform(0, 2 * Q)) - Q;
    const i64 b = static_cast<i64>(rng.uniform(0, 2 * Q)) - Q;
    if (a == -Q && b == -Q) continue;
    const u64 N = rng.uniform(1, 40);
    const auto g = grid_quadratic_factorize(Q, a, b, N);
    for (u64 m = 1; m <= N; ++m)
      for (u64 n = 1; n <= N; ++n) {
        const FactorView c = g.cell(m, n);
        check_factorization(c, g.value(m, n));
      }
  }
}

TEST_CASE("r2 values and the circle average") {
  CHECK(r2(u64{1}) == 4);
  CHECK(r2(u64{3}) == 0);
  CHECK(r2(u64{25}) == 12);
  for (u64 n = 1; n <= 200; ++n) {
    u64 brute = 0;
    const i64 r = static_cast<i64>(isqrt(n));
    for (i64 x = -r; x <= r; ++x)
      for (i64 y = -r; y <= r; ++y)
        if (static_cast<u64>(x * x + y * y) == n) ++brute;
    REQUIRE(r2(n) == brute);
  }
  u64 total = 0;
  for (u64 n = 1; n <= 100000; ++n) total += r2(n);
  const double avg = static_cast<double>(total) / 100000.0;
  CHECK(avg >= 3.0);
  CHECK(avg <= 3.3);
}

TEST_CASE("factorize_progression matches direct factorization") {
  const auto pf = factorize_progression(30, 1, 500);
  for (u64 k = 1; k <= 500; ++k) {
    const FactorView f = pf.at(k);
    REQUIRE(f.n == 30 * k + 1);
    const Factorization want = factorize(30 * k + 1);
    REQUIRE(std::vector<PrimePower>(f.factors.begin(), f.factors.end()) == want.factors);
  }
}
