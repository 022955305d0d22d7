#include <algorithm>
#include <cassert>
#include <cstdlib>

#include "pythreg/error.hpp"
#include "pythreg/factor.hpp"
#include "pythreg/parallel.hpp"

namespace pythreg {

namespace {

u64 abs64(i64 v) { return static_cast<u64>(v < 0 ? -v : v); }

struct PrimeState {
  u32 p;
  u32 q_mod;    // Q mod p
  u32 root;     // sqrt(-1) mod p, 0 unless p = 1 mod 4
  u32 base_plus;   // r+(0) = Q^{-1}(-a + s b)
  u32 base_minus;  // r-(0) = Q^{-1}(-a - s b)
  u32 zero_root;   // Q^{-1}(-a), the m-class when p | Qn+b
  u32 b_mod;
  bool direct;     // p = 2 or p | Q: divide cell by cell
  bool skip;       // p | Q but p does not divide a^2+b^2
};

constexpr std::size_t kCap = 16;

struct Band {
  std::vector<PrimePower> factors;
  std::vector<u32> counts;
  u64 residuals = 0;
};

}  // namespace

u64 grid_max_value(i64 Q, i64 a, i64 b, u64 N) {
  if (Q < 1) throw InvalidArgument("grid: Q must be >= 1");
  if (N < 1) throw InvalidArgument("grid: N must be >= 1");
  if (a < -Q || a > Q || b < -Q || b > Q) throw InvalidArgument("grid: need -Q <= a,b <= Q");
  using u128 = unsigned __int128;
  const u128 x = static_cast<u128>(Q) * N + abs64(a);
  const u128 y = static_cast<u128>(Q) * N + abs64(b);
  if (x > (u128{1} << 32) || y > (u128{1} << 32)) throw ResourceLimit("grid: (QN+|a|)^2+(QN+|b|)^2 overflows 64 bits");
  const u128 hi = x * x + y * y;
  if (hi > UINT64_MAX) throw ResourceLimit("grid: (QN+|a|)^2+(QN+|b|)^2 overflows 64 bits");
  return static_cast<u64>(hi);
}

u64 GridFactorSieve::value(u64 m, u64 n) const {
  const i64 x = params_.Q * static_cast<i64>(m) + params_.a;
  const i64 y = params_.Q * static_cast<i64>(n) + params_.b;
  return static_cast<u64>(static_cast<unsigned __int128>(abs64(x)) * abs64(x) +
                          static_cast<unsigned __int128>(abs64(y)) * abs64(y));
}

FactorView GridFactorSieve::cell(u64 m, u64 n) const {
  if (m < 1 || n < 1 || m > params_.N || n > params_.N) throw InvalidArgument("GridFactorSieve::cell: index out of range");
  const std::size_t i = index(m, n);
  return {value(m, n), std::span<const PrimePower>(arena_.data() + offsets_[i], offsets_[i + 1] - offsets_[i])};
}

GridFactorSieve grid_quadratic_factorize(i64 Q, i64 a, i64 b, u64 N) {
  const u64 vmax = grid_max_value(Q, a, b, N);
  if (a == -Q && b == -Q) throw InvalidArgument("grid: a = b = -Q makes v(1,1) = 0");

  GridFactorSieve g;
  g.params_ = {Q, a, b, N};
  g.sieve_bound_ = isqrt(vmax);
  const u64 bound = g.sieve_bound_;

  const auto cached = cached_sqrt_minus_one(bound);
  const auto& primes = *cached.primes;
  const auto& roots = *cached.roots;
  const u64 qa = static_cast<u64>(Q);

  std::vector<PrimeState> states;
  states.reserve(static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.end(), bound) - primes.begin()));
  for (std::size_t i = 0; i < primes.size() && primes[i] <= bound; ++i) {
    const u64 p = primes[i];
    PrimeState st{};
    st.p = static_cast<u32>(p);
    const u64 am = reduce_signed(a, p);
    const u64 bm = reduce_signed(b, p);
    if (p == 2 || qa % p == 0) {
      st.direct = true;
      st.skip = qa % p == 0 && (mul_mod(am, am, p) + mul_mod(bm, bm, p)) % p != 0;
      states.push_back(st);
      continue;
    }
    const u64 qm = qa % p;
    const u64 qinv = inverse_mod(qm, p);
    st.q_mod = static_cast<u32>(qm);
    st.b_mod = static_cast<u32>(bm);
    st.zero_root = static_cast<u32>(mul_mod(qinv, (p - am) % p, p));
    if (p % 4 == 1) {
      const u64 s = roots[i];
      st.root = static_cast<u32>(s);
      const u64 sb = mul_mod(s, bm, p);
      st.base_plus = static_cast<u32>(mul_mod(qinv, ((p - am) + sb) % p, p));
      st.base_minus = static_cast<u32>(mul_mod(qinv, ((p - am) + (p - sb)) % p, p));
    }
    states.push_back(st);
  }

  const u64 rows_per_band = std::max<u64>(1, (u64{1} << 15) / N);
  const u64 bands = (N + rows_per_band - 1) / rows_per_band;
  std::vector<Band> results(bands);

  parallel::for_each_band(bands, [&](std::size_t band) {
    const u64 n0 = 1 + band * rows_per_band;
    const u64 n1 = std::min(N, n0 + rows_per_band - 1);
    const u64 rows = n1 - n0 + 1;
    const std::size_t cells = rows * N;

    std::vector<u64> rem(cells);
    std::vector<PrimePower> buf(cells * kCap);
    std::vector<unsigned char> used(cells, 0);
    for (u64 n = n0; n <= n1; ++n)
      for (u64 m = 1; m <= N; ++m) rem[(n - n0) * N + (m - 1)] = g.value(m, n);

    auto take = [&](std::size_t idx, u64 p) {
      u32 e = 0;
      while (rem[idx] % p == 0) {
        rem[idx] /= p;
        ++e;
      }
      if (e > 0) buf[idx * kCap + used[idx]++] = {p, e};
      return e;
    };
    auto mark = [&](std::size_t row_base, u64 r, u64 p) {
      for (u64 m = r == 0 ? p : r; m <= N; m += p) {
        [[maybe_unused]] const u32 e = take(row_base + (m - 1), p);
        assert(e > 0);
      }
    };

    for (const auto& st : states) {
      const u64 p = st.p;
      if (st.skip) continue;
      if (st.direct) {
        for (std::size_t i = 0; i < cells; ++i)
          if (rem[i] % p == 0) take(i, p);
        continue;
      }
      u64 c = (mul_mod(st.q_mod, n0, p) + st.b_mod) % p;
      if (p % 4 == 1) {
        const u64 s = st.root;
        const u64 sn = mul_mod(s, n0, p);
        u64 rp = (st.base_plus + sn) % p;
        u64 rm = (st.base_minus + p - sn) % p;
        for (u64 row = 0; row < rows; ++row) {
          const std::size_t row_base = row * N;
          mark(row_base, rp, p);
          if (c != 0) mark(row_base, rm, p);
          rp += s;
          if (rp >= p) rp -= p;
          rm += p - s;
          if (rm >= p) rm -= p;
          c += st.q_mod;
          if (c >= p) c -= p;
        }
      } else {
        for (u64 row = 0; row < rows; ++row) {
          if (c == 0) mark(row * N, st.zero_root, p);
          c += st.q_mod;
          if (c >= p) c -= p;
        }
      }
    }

    Band& out = results[band];
    out.counts.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) {
      if (rem[i] > 1) {
        assert(is_prime(rem[i]) && rem[i] > bound);
        buf[i * kCap + used[i]++] = {rem[i], 1};
        ++out.residuals;
      }
      out.counts[i] = used[i];
      out.factors.insert(out.factors.end(), buf.begin() + static_cast<std::ptrdiff_t>(i * kCap),
                         buf.begin() + static_cast<std::ptrdiff_t>(i * kCap + used[i]));
    }
  });

  std::size_t total = 0;
  for (const auto& r : results) total += r.factors.size();
  g.arena_.reserve(total);
  g.offsets_.reserve(N * N + 1);
  g.offsets_.push_back(0);
  for (auto& r : results) {
    g.arena_.insert(g.arena_.end(), r.factors.begin(), r.factors.end());
    for (u32 c : r.counts) g.offsets_.push_back(g.offsets_.back() + c);
    g.residual_cells_ += r.residuals;
    r = Band{};
  }
  return g;
}

}  // namespace pythreg
