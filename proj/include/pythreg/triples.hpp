#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pythreg/multfunc.hpp"

namespace pythreg {

struct Triple {
  u64 x = 0;
  u64 y = 0;
  u64 z = 0;
  friend bool operator==(const Triple&, const Triple&) = default;
};

// x = k l1 (m^2 - n^2), y = k l2 m n, z = k l3 (m^2 + n^2); m > n >= 1, k >= 1.
Triple parametric_triple(u64 k, u64 m, u64 n, u64 l1 = 1, u64 l2 = 2, u64 l3 = 1);

struct TripleHit {
  u64 k = 0, m = 0, n = 0;
  u64 x = 0, y = 0, z = 0;  // legs reported in ascending order
  UnitValue fx, fy, fz;
};

struct TripleSearchResult {
  std::vector<TripleHit> hits;
  u64 dropped = 0;  // configurations skipped because two values coincided
};

struct TripleSearchOptions {
  u64 l1 = 1, l2 = 2, l3 = 1;
};

inline constexpr u64 kMaxTripleBound = 10'000'000;

// Every (k, m, n) with gcd(m, n) = 1 (and m - n odd in the Pythagorean
// case) and z <= bound where f is 1 at x, y and z. Sorted by z, then x.
TripleSearchResult search_level_set_triples(const MultFunc& f, u64 bound, const TripleSearchOptions& opt = {});

// Colors on [N]: level sets of a finite-valued f, or an explicit table.
struct ColoringSpec {
  std::optional<MultFunc> f;
  std::vector<u32> table;  // table[n-1] is the color of n

  static ColoringSpec level_sets(MultFunc f);
  static ColoringSpec explicit_table(std::vector<u32> colors);
  static ColoringSpec load(const std::string& path);

  // colors[n] for 1 <= n <= N (index 0 unused).
  std::vector<u32> colors(u64 N) const;
};

enum class PairSearchKind { XY, YZ };

struct MonochromaticPair {
  u64 first = 0;
  u64 second = 0;
  u64 witness = 0;  // z for XY, the other leg for YZ
};

// XY: distinct x < y of one color with x^2 + y^2 = z^2, z <= N. YZ: leg y and
// hypotenuse z <= N of one color. Sorted by (first, second).
std::vector<MonochromaticPair> search_monochromatic_pairs(const ColoringSpec& coloring, u64 N, PairSearchKind kind);

// Index j in [0, d) with z = e(j/d); throws InvalidArgument otherwise.
u64 root_index(UnitValue z, u64 d);

// E_{m > n, m,n <= N} E_{k in Phi_K} 1[f(k(m^2-n^2)) = 1] 1[f(2kmn) = 1] 1[f(k(m^2+n^2)) = 1].
double triple_density(const MultFunc& f, u64 d, u64 N, u64 K);

std::string triple_csv_header();
std::string triple_csv_row(const TripleHit& h);
std::string format_complex(UnitValue z);

}  // namespace pythreg
