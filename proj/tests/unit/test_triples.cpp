#include <cstdio>
#include <fstream>
#include <set>
#include <tuple>

#include "doctest.h"
#include "gen.hpp"
#include "pythreg/error.hpp"
#include "pythreg/triples.hpp"
#include "pythreg/weights.hpp"

using namespace pythreg;

namespace {

using XYZ = std::tuple<u64, u64, u64>;

std::set<XYZ> as_set(const TripleSearchResult& r) {
  std::set<XYZ> s;
  for (const auto& h : r.hits) s.insert({h.x, h.y, h.z});
  return s;
}

// z-first enumeration of x < y < z with x^2 + y^2 = z^2
std::vector<XYZ> brute_triples(u64 bound) {
  std::vector<XYZ> out;
  for (u64 z = 1; z <= bound; ++z)
    for (u64 x = 1; x < z; ++x) {
      const u64 y2 = z * z - x * x;
      const u64 y = isqrt(y2);
      if (y > x && y * y == y2) out.push_back({x, y, z});
    }
  return out;
}

const MultFunc kChiMod = modify_character(dirichlet_character(5, 2));

}  // namespace

TEST_CASE("parametric triples") {
  CHECK(parametric_triple(1, 2, 1) == Triple{3, 4, 5});
  CHECK(parametric_triple(2, 4, 1) == Triple{30, 16, 34});
  CHECK_THROWS_AS(parametric_triple(1, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(parametric_triple(1, 1u << 20, 1, 1, 1, u64{1} << 40), ResourceLimit);
}

TEST_CASE("search with f = 1 matches direct enumeration") {
  const auto r = search_level_set_triples(constant_one(), 1000);
  REQUIRE(!r.hits.empty());
  CHECK(r.hits.front().x == 3);
  CHECK(r.hits.front().y == 4);
  CHECK(r.hits.front().z == 5);
  CHECK(r.hits.size() == 881);
  const auto brute = brute_triples(1000);
  CHECK(as_set(r) == std::set<XYZ>(brute.begin(), brute.end()));
  for (std::size_t i = 1; i < r.hits.size(); ++i) {
    const auto& a = r.hits[i - 1];
    const auto& b = r.hits[i];
    REQUIRE((a.z < b.z || (a.z == b.z && a.x < b.x)));
  }
}

TEST_CASE("modified character mod 5") {
  const auto r = search_level_set_triples(kChiMod, 50);
  const std::set<XYZ> want{{20, 21, 29}, {16, 30, 34}};
  CHECK(as_set(r) == want);
  CHECK(as_set(r).count({3, 4, 5}) == 0);
  for (const auto& h : r.hits) {
    CHECK(h.x * h.x + h.y * h.y == h.z * h.z);
    CHECK(h.fx == UnitValue{1.0, 0.0});
    CHECK(h.fy == UnitValue{1.0, 0.0});
    CHECK(h.fz == UnitValue{1.0, 0.0});
  }
  const auto& h = r.hits[1];
  CHECK(std::tie(h.k, h.m, h.n) == std::make_tuple(u64{2}, u64{4}, u64{1}));
  CHECK(triple_csv_header() == "k,m,n,x,y,z,f_x,f_y,f_z");
  CHECK(triple_csv_row(h).rfind("2,4,1,16,30,34,", 0) == 0);
}

TEST_CASE("hits are Pythagorean, a subset of f = 1, and closed under good dilations") {
  const u64 bound = 3000;
  const auto all = as_set(search_level_set_triples(constant_one(), bound));
  gen::Rng rng(12);
  std::vector<MultFunc> funcs{liouville(), kChiMod, modify_character(dirichlet_character(13, 4)),
                              gen::random_root_table(rng, 3, 100)};
  for (const auto& f : funcs) {
    const auto r = search_level_set_triples(f, bound);
    const auto s = as_set(r);
    for (const auto& [x, y, z] : s) {
      REQUIRE(x * x + y * y == z * z);
      REQUIRE(all.count({x, y, z}) == 1);
      for (u64 lam = 2; lam * z <= bound; ++lam)
        if (approx_equal(f.at(lam), {1.0, 0.0})) REQUIRE(s.count({lam * x, lam * y, lam * z}) == 1);
    }
  }
}

TEST_CASE("search limits and degenerate configurations") {
  CHECK_THROWS_AS(search_level_set_triples(constant_one(), kMaxTripleBound + 1), ResourceLimit);
  CHECK_THROWS_AS(search_level_set_triples(constant_one(), 100, {0, 1, 1}), InvalidArgument);
  // with (l1, l2, l3) = (2, 3, 1) the legs coincide at (m, n) = (2, 1): x = y = 6
  const auto d = search_level_set_triples(constant_one(), 200, {2, 3, 1});
  CHECK(d.dropped >= 1);
  for (const auto& h : d.hits) CHECK(h.x != h.y);
  CHECK(search_level_set_triples(constant_one(), 1000).dropped == 0);
}

TEST_CASE("monochromatic pairs for Liouville") {
  const auto pairs = search_monochromatic_pairs(ColoringSpec::level_sets(liouville()), 100, PairSearchKind::XY);
  CHECK(pairs.size() == 12);
  REQUIRE(!pairs.empty());
  CHECK(pairs.front().first == 5);
  CHECK(pairs.front().second == 12);
  CHECK(pairs.front().witness == 13);
  for (const auto& p : pairs) CHECK(!(p.first == 20 && p.second == 21));
  CHECK(liouville().at(20) == UnitValue{-1.0, 0.0});
}

TEST_CASE("monochromatic pairs against brute force") {
  gen::Rng rng(21);
  std::vector<u32> colors(80);
  for (auto& c : colors) c = static_cast<u32>(rng.uniform(0, 2));
  const ColoringSpec spec = ColoringSpec::explicit_table(colors);
  std::set<XYZ> xy, yz;
  for (u64 x = 1; x <= 80; ++x)
    for (u64 y = 1; y <= 80; ++y) {
      if (x == y) continue;
      const u64 s = x * x + y * y, z = isqrt(s);
      if (x < y && z <= 80 && z * z == s && colors[x - 1] == colors[y - 1]) xy.insert({x, y, z});
      if (y > x) {
        const u64 d = y * y - x * x, o = isqrt(d);
        if (o >= 1 && o * o == d && colors[x - 1] == colors[y - 1]) yz.insert({x, y, o});
      }
    }
  std::set<XYZ> got_xy, got_yz;
  for (const auto& p : search_monochromatic_pairs(spec, 80, PairSearchKind::XY)) got_xy.insert({p.first, p.second, p.witness});
  for (const auto& p : search_monochromatic_pairs(spec, 80, PairSearchKind::YZ)) got_yz.insert({p.first, p.second, p.witness});
  CHECK(got_xy == xy);
  CHECK(got_yz == yz);
}

TEST_CASE("small colorings") {
  const auto single = ColoringSpec::explicit_table(std::vector<u32>(5, 0));
  const auto p5 = search_monochromatic_pairs(single, 5, PairSearchKind::XY);
  REQUIRE(p5.size() == 1);
  CHECK(p5[0].first == 3);
  CHECK(p5[0].second == 4);
  CHECK(p5[0].witness == 5);
  CHECK(search_monochromatic_pairs(ColoringSpec::explicit_table(std::vector<u32>(4, 0)), 4, PairSearchKind::XY).empty());
  CHECK_THROWS_AS(search_monochromatic_pairs(ColoringSpec::explicit_table(std::vector<u32>(4, 0)), 10, PairSearchKind::XY),
                  InvalidArgument);
}

TEST_CASE("coloring files") {
  const std::string path = "/tmp/pythreg_test_colors.txt";
  {
    std::ofstream out(path);
    out << "0 0 0\n1 0\n";
  }
  const auto c = ColoringSpec::load(path);
  const auto colors = c.colors(5);
  CHECK(std::vector<u32>(colors.begin() + 1, colors.end()) == std::vector<u32>{0, 0, 0, 1, 0});
  std::remove(path.c_str());
  CHECK_THROWS_AS(ColoringSpec::load(path), InvalidArgument);
}

TEST_CASE("root index") {
  CHECK(root_index({1.0, 0.0}, 4) == 0);
  CHECK(root_index({0.0, 1.0}, 4) == 1);
  CHECK(root_index({-1.0, 0.0}, 2) == 1);
  CHECK(root_index({0.0, -1.0}, 4) == 3);
  CHECK_THROWS_AS(root_index(unit_from_turns(0.1), 4), InvalidArgument);
}

TEST_CASE("triple density") {
  CHECK(triple_density(constant_one(), 1, 50, 3) == 1.0);
  // direct evaluation over Phi_2 = {8, 16}
  const MultFunc lam = liouville();
  double hits = 0;
  u64 pairs = 0;
  for (u64 m = 1; m <= 30; ++m)
    for (u64 n = 1; n < m; ++n) {
      ++pairs;
      for (u64 k : {8u, 16u}) {
        const bool ok = lam.at(k * (m * m - n * n)) == UnitValue{1.0, 0.0} && lam.at(2 * k * m * n) == UnitValue{1.0, 0.0} &&
                        lam.at(k * (m * m + n * n)) == UnitValue{1.0, 0.0};
        hits += ok ? 0.5 : 0.0;
      }
    }
  CHECK(triple_density(lam, 2, 30, 2) == doctest::Approx(hits / static_cast<double>(pairs)).epsilon(1e-14));
  const double l3 = triple_density(lam, 2, 200, 3);
  CHECK(l3 >= 0.0);
  CHECK(l3 <= 1.0);
  CHECK(triple_density(kChiMod, 2, 200, 3) > 0.0);
  CHECK_THROWS_AS(triple_density(archimedean(1.0), 2, 20, 2), InvalidArgument);
}
