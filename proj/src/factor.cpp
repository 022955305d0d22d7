#include "pythreg/factor.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "pythreg/error.hpp"

namespace pythreg {

u64 multiply_out(std::span<const PrimePower> factors) {
  unsigned __int128 acc = 1;
  for (const auto& pp : factors) {
    for (u32 e = 0; e < pp.exponent; ++e) {
      acc *= pp.prime;
      if (acc > UINT64_MAX) return 0;
    }
  }
  return static_cast<u64>(acc);
}

u32 exponent_of(FactorView f, u64 p) {
  for (const auto& pp : f.factors) {
    if (pp.prime == p) return pp.exponent;
    if (pp.prime > p) break;
  }
  return 0;
}

// ---------------------------------------------------------------------------

SpfTable build_spf_table(u64 limit) {
  if (limit < 2) throw InvalidArgument("build_spf_table: limit must be >= 2");
  if (limit > (u64{1} << 32)) throw ResourceLimit("build_spf_table: limit above 2^32");
  SpfTable t;
  t.limit_ = limit;
  t.spf_.assign(limit + 1, 0);
  std::vector<u32> primes;
  for (u64 i = 2; i <= limit; ++i) {
    if (t.spf_[i] == 0) {
      t.spf_[i] = static_cast<u32>(i);
      primes.push_back(static_cast<u32>(i));
    }
    const u64 si = t.spf_[i];
    for (u32 p : primes) {
      const u64 j = i * p;
      if (p > si || j > limit) break;
      t.spf_[j] = p;
    }
  }
  return t;
}

Factorization SpfTable::factorize(u64 n) const {
  if (n == 0 || n > limit_) throw InvalidArgument("SpfTable::factorize: argument outside table");
  Factorization f{n, {}};
  while (n > 1) {
    const u64 p = spf_[n];
    u32 e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  return f;
}

Factorization factorize(u64 n, std::span<const u32> primes) {
  if (n == 0) throw InvalidArgument("factorize: n must be >= 1");
  Factorization f{n, {}};
  u64 rem = n;
  bool reached_sqrt = false;
  for (u32 p32 : primes) {
    const u64 p = p32;
    if (p * p > rem) {
      reached_sqrt = true;
      break;
    }
    if (rem % p != 0) continue;
    u32 e = 0;
    while (rem % p == 0) {
      rem /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  if (rem > 1) {
    // A composite cofactor free of listed primes is at least (last+1)^2.
    const u64 last = primes.empty() ? 1 : primes.back();
    if (!reached_sqrt && static_cast<unsigned __int128>(last + 1) * (last + 1) <= rem)
      throw InvalidArgument("factorize: prime list does not reach sqrt(n)");
    f.factors.push_back({rem, 1});
  }
  return f;
}

namespace {

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto g = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, q = 1, d = 1, ys = 2;
    constexpr u64 kBlock = 128;
    u64 r = 1;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = g(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(kBlock, r - k); ++i) {
          y = g(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
        k += kBlock;
      } while (k < r && d == 1);
      r *= 2;
    } while (d == 1);
    if (d == n) {
      do {
        ys = g(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

void split(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace

Factorization factorize(u64 n) {
  if (n == 0) throw InvalidArgument("factorize: n must be >= 1");
  static const auto small = primes_up_to(1U << 12);
  Factorization f{n, {}};
  u64 rem = n;
  for (u64 p : small) {
    if (p * p > rem) break;
    if (rem % p != 0) continue;
    u32 e = 0;
    while (rem % p == 0) {
      rem /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  if (rem > 1) {
    std::vector<u64> parts;
    split(rem, parts);
    std::sort(parts.begin(), parts.end());
    for (u64 p : parts) {
      if (!f.factors.empty() && f.factors.back().prime == p)
        ++f.factors.back().exponent;
      else
        f.factors.push_back({p, 1});
    }
  }
  return f;
}

u64 sqrt_minus_one(u64 p) {
  if (p % 4 != 1) throw InvalidArgument("sqrt_minus_one: p must be 1 mod 4");
  if (!is_prime(p)) throw InvalidArgument("sqrt_minus_one: p must be prime");
  return sqrt_mod(p - 1, p);
}

u64 r2(FactorView f) {
  // r2(n) = 4 * prod_{p=1 mod 4} (e+1), zero if some p = 3 mod 4 has odd e.
  u64 count = 4;
  for (const auto& pp : f.factors) {
    if (pp.prime % 4 == 1) {
      count *= pp.exponent + 1;
    } else if (pp.prime % 4 == 3 && pp.exponent % 2 == 1) {
      return 0;
    }
  }
  return count;
}

u64 r2(u64 n) {
  if (n == 0) throw InvalidArgument("r2: n must be >= 1");
  return r2(factorize(n).view());
}

// ---------------------------------------------------------------------------

FactorView ProgressionFactors::at(u64 k) const {
  if (k < 1 || k > count_) throw InvalidArgument("ProgressionFactors::at: index out of range");
  const auto begin = offsets_[k - 1];
  const auto end = offsets_[k];
  return {value(k), std::span<const PrimePower>(arena_.data() + begin, end - begin)};
}

ProgressionFactors factorize_progression(u64 step, u64 offset, u64 count) {
  if (step == 0) throw InvalidArgument("factorize_progression: step must be >= 1");
  const auto top = static_cast<unsigned __int128>(step) * count + offset;
  if (top > UINT64_MAX) throw ResourceLimit("factorize_progression: values overflow 64 bits");

  ProgressionFactors out;
  out.step_ = step;
  out.offset_ = offset;
  out.count_ = count;
  out.offsets_.assign(count + 1, 0);
  const u64 vmax = static_cast<u64>(top);
  const u64 bound = isqrt(vmax);

  constexpr u64 kSieveBound = u64{1} << 24;
  if (bound > kSieveBound) {
    for (u64 k = 1; k <= count; ++k) {
      auto f = factorize(out.value(k));
      out.arena_.insert(out.arena_.end(), f.factors.begin(), f.factors.end());
      out.offsets_[k] = out.arena_.size();
    }
    return out;
  }

  // Per-value buffers: a 64-bit integer has at most 15 distinct primes.
  constexpr std::size_t kCap = 16;
  std::vector<u64> rem(count);
  std::vector<PrimePower> buf(count * kCap);
  std::vector<unsigned char> used(count, 0);
  for (u64 k = 1; k <= count; ++k) rem[k - 1] = out.value(k);

  auto take = [&](u64 idx, u64 p) {
    u32 e = 0;
    while (rem[idx] % p == 0) {
      rem[idx] /= p;
      ++e;
    }
    if (e > 0) buf[idx * kCap + used[idx]++] = {p, e};
  };

  const auto primes = cached_primes(bound);
  for (u32 p32 : *primes) {
    const u64 p = p32;
    if (p > bound) break;
    if (step % p == 0) {
      if (offset % p != 0) continue;
      for (u64 i = 0; i < count; ++i) take(i, p);
      continue;
    }
    // step*k + offset = 0 mod p  <=>  k = -offset * step^{-1} mod p
    const u64 r = mul_mod(p - offset % p, inverse_mod(step % p, p), p);
    for (u64 k = r == 0 ? p : r; k <= count; k += p) take(k - 1, p);
  }
  for (u64 i = 0; i < count; ++i) {
    if (rem[i] > 1) buf[i * kCap + used[i]++] = {rem[i], 1};
    out.arena_.insert(out.arena_.end(), buf.begin() + static_cast<std::ptrdiff_t>(i * kCap),
                      buf.begin() + static_cast<std::ptrdiff_t>(i * kCap + used[i]));
    out.offsets_[i + 1] = out.arena_.size();
  }
  return out;
}

}  // namespace pythreg
