#include "pythreg/triples.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "pythreg/error.hpp"
#include "pythreg/weights.hpp"

namespace pythreg {

namespace {

using u128 = unsigned __int128;

u64 checked(u128 v, const char* who) {
  if (v > UINT64_MAX) throw ResourceLimit(std::string(who) + ": value overflows 64 bits");
  return static_cast<u64>(v);
}

// Caches whether f(v) == 1 for v <= limit, evaluating through an spf table.
class OneCache {
 public:
  OneCache(const MultFunc& f, u64 limit) : f_(f), spf_(build_spf_table(std::max<u64>(limit, 2))), state_(limit + 1, -1) {}

  UnitValue value(u64 v) const {
    if (v <= spf_.limit()) return f_(spf_.factorize(v).view());
    return f_.at(v);
  }

  bool is_one(u64 v) {
    if (v >= state_.size()) return approx_equal(value(v), {1.0, 0.0});
    auto& s = state_[v];
    if (s < 0) s = approx_equal(value(v), {1.0, 0.0}) ? 1 : 0;
    return s == 1;
  }

 private:
  const MultFunc& f_;
  SpfTable spf_;
  std::vector<signed char> state_;
};

void for_each_pythagorean(u64 zmax, const std::function<void(u64, u64, u64)>& fn) {
  // primitive triples a^2 + b^2 = c^2 with c <= zmax, then multiples
  for (u64 m = 2; m * m + 1 <= zmax; ++m)
    for (u64 n = 1 + (m % 2); n < m; n += 2) {
      if (std::gcd(m, n) != 1) continue;
      const u64 c = m * m + n * n;
      if (c > zmax) break;
      const u64 a = m * m - n * n, b = 2 * m * n;
      for (u64 k = 1; k * c <= zmax; ++k) fn(k * a, k * b, k * c);
    }
}

}  // namespace

Triple parametric_triple(u64 k, u64 m, u64 n, u64 l1, u64 l2, u64 l3) {
  if (k < 1 || n < 1) throw InvalidArgument("parametric_triple: need k, n >= 1");
  if (m <= n) throw InvalidArgument("parametric_triple: need m > n");
  const u128 mm = static_cast<u128>(m) * m, nn = static_cast<u128>(n) * n;
  Triple t;
  t.x = checked(static_cast<u128>(checked(static_cast<u128>(k) * l1, "parametric_triple")) * checked(mm - nn, "parametric_triple"),
                "parametric_triple");
  t.y = checked(static_cast<u128>(checked(static_cast<u128>(k) * l2, "parametric_triple")) * checked(static_cast<u128>(m) * n, "parametric_triple"),
                "parametric_triple");
  t.z = checked(static_cast<u128>(checked(static_cast<u128>(k) * l3, "parametric_triple")) * checked(mm + nn, "parametric_triple"),
                "parametric_triple");
  return t;
}

TripleSearchResult search_level_set_triples(const MultFunc& f, u64 bound, const TripleSearchOptions& opt) {
  if (bound > kMaxTripleBound) throw ResourceLimit("search_level_set_triples: bound above 10^7");
  if (opt.l1 < 1 || opt.l2 < 1 || opt.l3 < 1) throw InvalidArgument("search_level_set_triples: l1, l2, l3 must be >= 1");
  TripleSearchResult out;
  if (bound < 2) return out;
  const bool pythagorean = opt.l1 == 1 && opt.l2 == 2 && opt.l3 == 1;
  OneCache cache(f, bound);

  for (u64 m = 2; opt.l3 * (m * m + 1) <= bound; ++m) {
    for (u64 n = 1; n < m; ++n) {
      if (pythagorean && (m - n) % 2 == 0) continue;
      if (std::gcd(m, n) != 1) continue;
      const Triple base = parametric_triple(1, m, n, opt.l1, opt.l2, opt.l3);
      if (base.z > bound) break;
      for (u64 k = 1; k * base.z <= bound; ++k) {
        const u64 x = k * base.x, y = k * base.y, z = k * base.z;
        if (x == y || y == z || x == z) {
          ++out.dropped;
          continue;
        }
        if (!cache.is_one(z) || !cache.is_one(x) || !cache.is_one(y)) continue;
        TripleHit h{k, m, n, std::min(x, y), std::max(x, y), z, {}, {}, {}};
        h.fx = cache.value(h.x);
        h.fy = cache.value(h.y);
        h.fz = cache.value(h.z);
        out.hits.push_back(h);
      }
    }
  }
  std::sort(out.hits.begin(), out.hits.end(), [](const TripleHit& a, const TripleHit& b) {
    return a.z != b.z ? a.z < b.z : a.x < b.x;
  });
  return out;
}

ColoringSpec ColoringSpec::level_sets(MultFunc f) {
  ColoringSpec c;
  c.f = std::move(f);
  return c;
}

ColoringSpec ColoringSpec::explicit_table(std::vector<u32> colors) {
  ColoringSpec c;
  c.table = std::move(colors);
  return c;
}

ColoringSpec ColoringSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("coloring: cannot open " + path);
  std::vector<u32> colors;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    for (std::string tok; ls >> tok;) {
      std::size_t used = 0;
      long long v = -1;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw InvalidArgument("coloring: bad color '" + tok + "'");
      if (v < 0 || v > UINT32_MAX) throw InvalidArgument("coloring: colors must lie in [0, 2^32)");
      colors.push_back(static_cast<u32>(v));
    }
  }
  return explicit_table(std::move(colors));
}

std::vector<u32> ColoringSpec::colors(u64 N) const {
  std::vector<u32> out(N + 1, 0);
  if (!f) {
    if (table.size() < N) throw InvalidArgument("coloring: table covers fewer than N integers");
    std::copy(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(N), out.begin() + 1);
    return out;
  }
  std::vector<UnitValue> seen;
  if (N == 0) return out;
  const auto spf = build_spf_table(std::max<u64>(N, 2));
  for (u64 n = 1; n <= N; ++n) {
    const UnitValue z = (*f)(spf.factorize(n).view());
    std::size_t i = 0;
    while (i < seen.size() && !approx_equal(seen[i], z)) ++i;
    if (i == seen.size()) {
      if (seen.size() >= 4096) throw InvalidArgument("coloring: function takes too many distinct values");
      seen.push_back(z);
    }
    out[n] = static_cast<u32>(i);
  }
  return out;
}

std::vector<MonochromaticPair> search_monochromatic_pairs(const ColoringSpec& coloring, u64 N, PairSearchKind kind) {
  if (N > kMaxTripleBound) throw ResourceLimit("search_monochromatic_pairs: N above 10^7");
  std::vector<MonochromaticPair> out;
  if (N < 3) return out;
  const auto col = coloring.colors(N);
  if (kind == PairSearchKind::XY) {
    // the witness has to lie in [N] as well
    for_each_pythagorean(N, [&](u64 a, u64 b, u64 c) {
      const u64 x = std::min(a, b), y = std::max(a, b);
      if (col[x] == col[y]) out.push_back({x, y, c});
    });
  } else {
    for_each_pythagorean(N, [&](u64 a, u64 b, u64 c) {
      if (col[a] == col[c]) out.push_back({a, c, b});
      if (col[b] == col[c]) out.push_back({b, c, a});
    });
  }
  std::sort(out.begin(), out.end(), [](const MonochromaticPair& a, const MonochromaticPair& b) {
    return a.first != b.first ? a.first < b.first : a.second < b.second;
  });
  return out;
}

u64 root_index(UnitValue z, u64 d) {
  if (d == 0) throw InvalidArgument("root_index: d must be >= 1");
  const double t = turns_of(z) * static_cast<double>(d);
  const i64 j = static_cast<i64>(std::llround(t));
  const u64 idx = reduce_signed(j, d);
  if (!approx_equal(z, root_of_unity(static_cast<i64>(idx), d)))
    throw InvalidArgument("value is not a " + std::to_string(d) + "-th root of unity");
  return idx;
}

double triple_density(const MultFunc& f, u64 d, u64 N, u64 K) {
  if (d == 0) throw InvalidArgument("triple_density: d must be >= 1");
  if (N < 2) throw InvalidArgument("triple_density: N must be >= 2");
  const FolnerSet set = folner_set(K);

  // classes[j] = #{k in Phi_K : f(k) = e(j/d)}
  std::vector<u64> classes(d, 0);
  std::vector<PrimePower> buf(set.primes.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = 0; j < set.primes.size(); ++j) buf[j] = {set.primes[j], set.elements[i][j]};
    ++classes[root_index(f(FactorView{0, buf}), d)];
  }

  const u64 top = checked(static_cast<u128>(2) * N * N, "triple_density");
  constexpr u64 kDenseLimit = 100'000'000;
  std::vector<u64> idx;  // index of f(v) for v <= 2N (and <= 2N^2 when dense)
  const u64 dense = top <= kDenseLimit ? top : 2 * N;
  {
    const auto spf = build_spf_table(std::max<u64>(dense, 2));
    idx.assign(dense + 1, 0);
    for (u64 v = 1; v <= dense; ++v) idx[v] = root_index(f(spf.factorize(v).view()), d);
  }
  auto index_of = [&](u64 v) { return v <= dense ? idx[v] : root_index(f.at(v), d); };

  const u64 two = root_index(f.at(2), d);
  u64 good = 0;  // sum over (m, n) of #k with all three indicators 1
  for (u64 m = 2; m <= N; ++m)
    for (u64 n = 1; n < m; ++n) {
      const u64 a = (index_of(m - n) + index_of(m + n)) % d;
      const u64 b = (two + index_of(m) + index_of(n)) % d;
      if (a != b) continue;
      const u64 c = index_of(m * m + n * n);
      if (c != a) continue;
      good += classes[(d - a) % d];
    }
  const double pairs = static_cast<double>(N) * static_cast<double>(N - 1) / 2.0;
  return static_cast<double>(good) / (pairs * static_cast<double>(set.size()));
}

std::string format_complex(UnitValue z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

std::string triple_csv_header() { return "k,m,n,x,y,z,f_x,f_y,f_z"; }

std::string triple_csv_row(const TripleHit& h) {
  std::ostringstream os;
  os << h.k << ',' << h.m << ',' << h.n << ',' << h.x << ',' << h.y << ',' << h.z << ',' << format_complex(h.fx) << ','
     << format_complex(h.fy) << ',' << format_complex(h.fz);
  return os.str();
}

}  // namespace pythreg
