#include "pythreg/primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <utility>

#include "pythreg/error.hpp"

namespace pythreg {

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

u64 inverse_mod(u64 a, u64 m) {
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
  while (new_r != 0) {
    const i64 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw InvalidArgument("inverse_mod: argument not invertible");
  return reduce_signed(t, m);
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : kBases) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

u64 sqrt_mod(u64 a, u64 p) {
  a %= p;
  if (p == 2 || a == 0) return a;
  if (legendre(a, p) != 1) throw InvalidArgument("sqrt_mod: not a quadratic residue");

  u64 r;
  if (p % 4 == 3) {
    r = pow_mod(a, (p + 1) / 4, p);
  } else {
    // p - 1 = q * 2^s with q odd
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1U) == 0) {
      q >>= 1U;
      ++s;
    }
    u64 z = 2;
    while (legendre(z, p) != -1) ++z;

    unsigned m = s;
    u64 c = pow_mod(z, q, p);
    u64 t = pow_mod(a, q, p);
    r = pow_mod(a, (q + 1) / 2, p);
    while (t != 1) {
      unsigned i = 0;
      u64 t2 = t;
      while (t2 != 1) {
        t2 = mul_mod(t2, t2, p);
        ++i;
      }
      u64 b = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
      m = i;
      c = mul_mod(b, b, p);
      t = mul_mod(t, c, p);
      r = mul_mod(r, b, p);
    }
  }
  return std::min(r, p - r);
}

u64 least_primitive_root(u64 p) {
  if (p == 2) return 1;
  std::vector<u64> factors;
  u64 m = p - 1;
  for (u64 d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) factors.push_back(m);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (u64 f : factors) {
      if (pow_mod(g, (p - 1) / f, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

namespace {

constexpr u64 kSegment = u64{1} << 18;

// Odd-only segmented sieve over (lo, hi]; `base` must contain every prime
// <= sqrt(hi).
template <class Fn>
void sieve_range(u64 lo, u64 hi, const std::vector<u32>& base, Fn&& emit) {
  if (hi <= lo) return;
  if (lo < 2 && hi >= 2) emit(2);
  u64 start = std::max<u64>(lo + 1, 3);
  if (start % 2 == 0) ++start;
  std::vector<unsigned char> seg;
  for (u64 low = start; low <= hi; low += 2 * kSegment) {
    const u64 high = std::min(hi, low + 2 * kSegment - 1);
    const u64 slots = (high - low) / 2 + 1;
    seg.assign(slots, 1);
    for (u32 p32 : base) {
      const u64 p = p32;
      if (p == 2) continue;
      if (p * p > high) break;
      u64 first = std::max(p * p, (low + p - 1) / p * p);
      if (first % 2 == 0) first += p;
      for (u64 j = first; j <= high; j += 2 * p) seg[(j - low) / 2] = 0;
    }
    for (u64 i = 0; i < slots; ++i) {
      if (seg[i]) {
        const u64 v = low + 2 * i;
        if (v > 1) emit(v);
      }
    }
  }
}

std::vector<u32> small_primes(u64 limit) {
  std::vector<u32> out;
  if (limit < 2) return out;
  std::vector<unsigned char> is(limit + 1, 1);
  is[0] = is[1] = 0;
  for (u64 i = 2; i * i <= limit; ++i)
    if (is[i])
      for (u64 j = i * i; j <= limit; j += i) is[j] = 0;
  for (u64 i = 2; i <= limit; ++i)
    if (is[i]) out.push_back(static_cast<u32>(i));
  return out;
}

struct Cache {
  std::mutex mu;
  u64 covered = 0;
  std::shared_ptr<const std::vector<u32>> primes;
  std::shared_ptr<const std::vector<u32>> roots;
};

Cache& cache() {
  static Cache c;
  return c;
}

}  // namespace

std::vector<u32> primes_up_to(u64 limit) {
  if (limit > (u64{1} << 32)) throw ResourceLimit("primes_up_to: limit above 2^32");
  if (limit < (u64{1} << 16)) return small_primes(limit);
  const auto base = small_primes(isqrt(limit));
  std::vector<u32> out;
  out.reserve(static_cast<std::size_t>(1.1 * static_cast<double>(limit) / std::log(static_cast<double>(limit))));
  sieve_range(0, limit, base, [&](u64 p) { out.push_back(static_cast<u32>(p)); });
  return out;
}

std::shared_ptr<const std::vector<u32>> cached_primes(u64 limit) {
  constexpr u64 kMax = u64{1} << 32;
  if (limit > kMax) throw ResourceLimit("cached_primes: limit above 2^32");
  auto& c = cache();
  std::lock_guard lock(c.mu);
  if (!c.primes || c.covered < limit) {
    const u64 target = std::min(kMax, std::max({limit, 2 * c.covered, u64{1} << 16}));
    c.primes = std::make_shared<const std::vector<u32>>(primes_up_to(target));
    c.covered = target;
  }
  return c.primes;
}

PrimeRoots cached_sqrt_minus_one(u64 limit) {
  auto primes = cached_primes(limit);
  auto& c = cache();
  std::lock_guard lock(c.mu);
  if (!c.roots || c.roots->size() < primes->size()) {
    auto roots = std::make_shared<std::vector<u32>>(primes->size(), 0);
    std::size_t done = 0;
    if (c.roots) {
      std::copy(c.roots->begin(), c.roots->end(), roots->begin());
      done = c.roots->size();
    }
    for (std::size_t i = done; i < primes->size(); ++i) {
      const u64 p = (*primes)[i];
      if (p % 4 == 1) (*roots)[i] = static_cast<u32>(sqrt_mod(p - 1, p));
    }
    c.roots = std::move(roots);
  }
  // Roots may cover more primes than `primes` if another caller grew the
  // cache in between; the prefix is aligned either way.
  return {primes, c.roots};
}

void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn) {
  if (hi <= lo) return;
  if (hi >= (u64{1} << 40)) throw ResourceLimit("for_each_prime: range end at or above 2^40");
  constexpr u64 kListed = u64{1} << 28;
  if (hi <= kListed) {
    auto primes = cached_primes(hi);
    auto it = std::upper_bound(primes->begin(), primes->end(), lo);
    for (; it != primes->end() && *it <= hi; ++it) fn(*it);
    return;
  }
  auto base = cached_primes(isqrt(hi) + 1);
  sieve_range(lo, hi, *base, [&](u64 p) { fn(p); });
}

}  // namespace pythreg
