#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pythreg/primes.hpp"

namespace pythreg {

struct PrimePower {
  u64 prime;
  u32 exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Non-owning view of a factorization. `n == 0` means the integer itself is
// not materialized (it overflows 64 bits); consumers then work from the
// prime powers alone.
struct FactorView {
  u64 n = 1;
  std::span<const PrimePower> factors;
};

// n together with its prime powers in strictly increasing prime order.
struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;

  FactorView view() const { return {n, factors}; }
  operator FactorView() const { return view(); }

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

// Product of p^e over the view, or 0 on 64-bit overflow.
u64 multiply_out(std::span<const PrimePower> factors);

// Exponent of p in the view (0 when absent).
u32 exponent_of(FactorView f, u64 p);

// Smallest-prime-factor table for 2 <= n <= limit.
class SpfTable {
 public:
  u64 limit() const { return limit_; }
  u32 spf(u64 n) const { return spf_[n]; }
  Factorization factorize(u64 n) const;

 private:
  friend SpfTable build_spf_table(u64 limit);
  u64 limit_ = 0;
  std::vector<u32> spf_;
};

// Dense linear sieve. limit < 2 -> InvalidArgument, limit > 2^32 -> ResourceLimit.
SpfTable build_spf_table(u64 limit);

// Trial division against an ascending prime list that must reach sqrt(n).
Factorization factorize(u64 n, std::span<const u32> primes);

// Factorization of any 64-bit n: trial division by small primes, then
// Pollard-Brent with Miller-Rabin.
Factorization factorize(u64 n);

// The smaller square root of -1 modulo a prime p = 1 (mod 4).
u64 sqrt_minus_one(u64 p);

// Number of (x, y) in Z^2 with x^2 + y^2 = n.
u64 r2(u64 n);
u64 r2(FactorView f);

// Factorizations of step*k + offset for k = 1..count, stored in one arena.
class ProgressionFactors {
 public:
  u64 step() const { return step_; }
  u64 offset() const { return offset_; }
  u64 count() const { return count_; }
  u64 value(u64 k) const { return step_ * k + offset_; }
  FactorView at(u64 k) const;

 private:
  friend ProgressionFactors factorize_progression(u64 step, u64 offset, u64 count);
  u64 step_ = 1, offset_ = 0, count_ = 0;
  std::vector<PrimePower> arena_;
  std::vector<u64> offsets_;
};

// Sieves the arithmetic progression when its largest value has a small
// enough square root, falls back to per-value factorization otherwise.
ProgressionFactors factorize_progression(u64 step, u64 offset, u64 count);

// ---------------------------------------------------------------------------
// Quadratic-form grid.
// ---------------------------------------------------------------------------

struct GridParams {
  i64 Q = 1;
  i64 a = 0;
  i64 b = 0;
  u64 N = 1;
};

// Factorizations of v(m,n) = (Qm+a)^2 + (Qn+b)^2 for 1 <= m,n <= N, kept in
// a flat arena in row-major (n, m) order.
class GridFactorSieve {
 public:
  const GridParams& params() const { return params_; }
  u64 N() const { return params_.N; }
  u64 value(u64 m, u64 n) const;
  FactorView cell(u64 m, u64 n) const;
  // Cells whose cofactor after sieving to sqrt(v_max) was a prime > sqrt(v_max).
  u64 residual_prime_cells() const { return residual_cells_; }
  u64 sieve_bound() const { return sieve_bound_; }

 private:
  friend GridFactorSieve grid_quadratic_factorize(i64 Q, i64 a, i64 b, u64 N);
  std::size_t index(u64 m, u64 n) const { return static_cast<std::size_t>((n - 1) * params_.N + (m - 1)); }
  GridParams params_;
  std::vector<PrimePower> arena_;
  std::vector<u64> offsets_;
  u64 residual_cells_ = 0;
  u64 sieve_bound_ = 0;
};

// v_max = (QN+|a|)^2 + (QN+|b|)^2, or ResourceLimit when it overflows.
u64 grid_max_value(i64 Q, i64 a, i64 b, u64 N);

GridFactorSieve grid_quadratic_factorize(i64 Q, i64 a, i64 b, u64 N);

}  // namespace pythreg
