#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace pythreg {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using i64 = std::int64_t;

// ---------------------------------------------------------------------------
// Modular arithmetic on 64-bit residues.
// ---------------------------------------------------------------------------

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m);

// Reduces a signed value into [0, m).
inline u64 reduce_signed(i64 v, u64 m) {
  const i64 r = v % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

// Inverse of a modulo m; requires gcd(a, m) = 1.
u64 inverse_mod(u64 a, u64 m);

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

// Legendre symbol (a/p) for odd prime p, returned as -1, 0 or 1.
int legendre(u64 a, u64 p);

// Square root of a modulo the odd prime p by Tonelli-Shanks, using the
// smallest quadratic non-residue as generator. Returns the smaller root.
// Throws InvalidArgument when a is a non-residue.
u64 sqrt_mod(u64 a, u64 p);

// Least primitive root modulo the prime p.
u64 least_primitive_root(u64 p);

// ---------------------------------------------------------------------------
// Prime generation.
// ---------------------------------------------------------------------------

// All primes <= limit by segmented Eratosthenes.
std::vector<u32> primes_up_to(u64 limit);

// Calls fn(p) for every prime lo < p <= hi in increasing order. Works for
// hi up to 2^40 without materializing the full list.
void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn);

// Process-wide cache of small primes. The returned list covers at least
// `limit` (limit <= 2^32); older handles stay valid after growth.
std::shared_ptr<const std::vector<u32>> cached_primes(u64 limit);

// sqrt(-1) mod p aligned with cached_primes(limit): entry i is the smaller
// root for primes[i] = 1 mod 4 and 0 otherwise.
struct PrimeRoots {
  std::shared_ptr<const std::vector<u32>> primes;
  std::shared_ptr<const std::vector<u32>> roots;
};
PrimeRoots cached_sqrt_minus_one(u64 limit);

// Integer floor(sqrt(n)).
u64 isqrt(u64 n);

}  // namespace pythreg
