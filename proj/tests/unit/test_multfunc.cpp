#include <cstdio>
#include <fstream>
#include <numeric>

#include "doctest.h"
#include "gen.hpp"
#include "pythreg/error.hpp"
#include "pythreg/multfunc.hpp"

using namespace pythreg;

namespace {

const UnitValue kOne{1.0, 0.0};
const UnitValue kMinusOne{-1.0, 0.0};
const UnitValue kI{0.0, 1.0};

bool near(UnitValue a, UnitValue b, double tol = 1e-10) { return std::abs(a - b) <= tol; }

UnitValue ipow(UnitValue z, u64 k) {
  UnitValue r = kOne;
  for (u64 i = 0; i < k; ++i) r *= z;
  return r;
}

std::string temp_path(const char* name) { return std::string("/tmp/pythreg_test_") + name; }

}  // namespace

TEST_CASE("quarter turns are exact") {
  CHECK(unit_from_turns(0.25) == kI);
  CHECK(unit_from_turns(-0.5) == kMinusOne);
  CHECK(root_of_unity(3, 4) == -kI);
  CHECK(turns_of(kMinusOne) == -0.5);
  CHECK(turns_of(kOne) == 0.0);
}

TEST_CASE("Dirichlet characters of prime modulus") {
  const MultFunc chi = dirichlet_character(5, 2);
  CHECK(chi.at(2) == kMinusOne);
  CHECK(chi.at(4) == kOne);
  CHECK(chi.at(3) == kMinusOne);
  CHECK(chi.at(5) == UnitValue{0.0, 0.0});
  const MultFunc principal = dirichlet_character(5, 0);
  for (u64 n = 1; n <= 50; ++n)
    if (n % 5 != 0) CHECK(principal.at(n) == kOne);
  CHECK(dirichlet_character(3, 1).at(2) == kMinusOne);
  CHECK_THROWS_AS(dirichlet_character(15, 1), Unsupported);
  CHECK_THROWS_AS(dirichlet_character(1, 0), InvalidArgument);
}

TEST_CASE("character tables: zeros, roots of unity, multiplicativity") {
  for (u64 q : {3u, 5u, 7u, 11u, 13u}) {
    for (i64 j = 0; j < static_cast<i64>(q) - 1; ++j) {
      const MultFunc chi = dirichlet_character(q, j);
      const auto& c = std::get<spec::Character>(chi.node());
      REQUIRE(c.table.size() == q);
      CHECK(c.table[0] == UnitValue{0.0, 0.0});
      for (u64 r = 1; r < q; ++r) {
        CHECK(near(ipow(c.table[r], q - 1), kOne));
        for (u64 s = 1; s < q; ++s) CHECK(near(c.table[r] * c.table[s], c.table[r * s % q]));
      }
      for (u64 n = 1; n <= 1000; ++n) REQUIRE(near(chi.at(n), chi.at(n % q == 0 ? q : n % q)));
    }
  }
}

TEST_CASE("modified characters") {
  const MultFunc mod = modify_character(dirichlet_character(5, 2));
  CHECK(mod.at(5) == kOne);
  CHECK(mod.at(2) == kMinusOne);
  CHECK(mod.at(25) == kOne);
  CHECK(mod.at(10) == kMinusOne);
  CHECK(mod.circle_valued());
  CHECK_THROWS_AS(modify_character(liouville()), InvalidArgument);
}

TEST_CASE("evaluation examples") {
  CHECK(liouville().at(720) == kMinusOne);
  CHECK(archimedean(0.0).at(12345) == kOne);
  CHECK(dirichlet_character(5, 2).at(841) == kOne);
  CHECK(constant_one().at(1) == kOne);
  CHECK_THROWS_AS(liouville().at(0), InvalidArgument);
}

TEST_CASE("d-th roots") {
  for (u64 d : {1u, 2u, 5u}) CHECK(dth_root(constant_one(), d).at(97) == kOne);
  const MultFunc g = dth_root(liouville(), 2);
  for (u64 p : {2u, 3u, 5u, 101u}) {
    CHECK(g.at_prime(p) == -kI);
    CHECK(near(g.at_prime(p) * g.at_prime(p), kMinusOne));
  }
  const MultFunc chi_mod = modify_character(dirichlet_character(5, 2));
  const MultFunc h = dth_root(chi_mod, 2);
  CHECK(h.at_prime(2) == -kI);
  CHECK(h.at_prime(5) == kOne);
  CHECK(near(h.at(2) * h.at(2), chi_mod.at(2)));
  CHECK_THROWS_AS(dth_root(dirichlet_character(5, 2), 2), InvalidArgument);
  CHECK_THROWS_AS(dth_root(liouville(), 0), InvalidArgument);
}

TEST_CASE("combinators") {
  const MultFunc sq = power(liouville(), 2);
  for (u64 n = 1; n <= 100; ++n) CHECK(sq.at(n) == kOne);
  for (double t : {0.3, -2.0, 5.5}) {
    const MultFunc a = conjugate(archimedean(t));
    const MultFunc b = archimedean(-t);
    for (u64 n : {2u, 17u, 1000u, 99991u}) CHECK(near(a.at(n), b.at(n)));
  }
  CHECK(product(dirichlet_character(5, 2), liouville()).at(2) == kOne);
  CHECK(near(combine(CombineOp::Power, {liouville()}, 3).at(2), kMinusOne));
  CHECK_THROWS_AS(combine(CombineOp::Conjugate, {liouville(), liouville()}), InvalidArgument);
  CHECK_THROWS_AS(combine(CombineOp::Product, {}), InvalidArgument);
}

TEST_CASE("negative powers are conjugate powers") {
  const MultFunc chi = dirichlet_character(7, 1);
  for (u64 n = 1; n <= 60; ++n) CHECK(near(power(chi, -2).at(n), std::conj(chi.at(n) * chi.at(n))));
}

TEST_CASE("indicator of the value 1") {
  CHECK(indicator_one_mean(liouville(), 2, 4) == 1.0);
  CHECK(indicator_one_mean(liouville(), 2, 2) == 0.0);
  CHECK(indicator_one_mean(modify_character(dirichlet_character(5, 2)), 2, 34) == 1.0);
  CHECK_THROWS_AS(indicator_one_mean(archimedean(1.0), 2, 3), InvalidArgument);
}

TEST_CASE("function description parser and describe round trip") {
  for (const auto& s : gen::builtin_specs()) {
    const MultFunc f = parse_spec(s);
    const MultFunc g = parse_spec(f.describe());
    for (u64 n = 1; n <= 200; ++n) REQUIRE(near(f.at(n), g.at(n), 1e-12));
  }
  CHECK_THROWS_AS(parse_spec("bogus"), InvalidArgument);
  CHECK_THROWS_AS(parse_spec("char 5"), InvalidArgument);
  CHECK_THROWS_AS(parse_spec("liouville one"), InvalidArgument);
  CHECK_THROWS_AS(parse_spec("char 6 1"), Unsupported);
  const MultFunc t = parse_spec("ptable 2 2 -1 0 3 0 1 1 0");
  CHECK(t.at(2) == kMinusOne);
  CHECK(t.at(3) == kI);
  CHECK(t.at(5) == kOne);
}

TEST_CASE("prime tables from files") {
  const std::string path = temp_path("ptable.txt");
  {
    std::ofstream out(path);
    out << "# values at small primes\n2 -1 0\n7 0 -1\ndefault 1 0\n";
  }
  const MultFunc f = load_prime_table(path);
  CHECK(f.at(14) == kI);
  CHECK(f.at(11) == kOne);
  {
    std::ofstream out(path);
    out << "4 1 0\n";
  }
  CHECK_THROWS_AS(load_prime_table(path), InvalidArgument);
  {
    std::ofstream out(path);
    out << "3 2 0\n";
  }
  CHECK_THROWS_AS(load_prime_table(path), InvalidArgument);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_prime_table(path), InvalidArgument);
}

TEST_CASE("character period") {
  CHECK(character_period(constant_one()) == 1u);
  CHECK(character_period(product(dirichlet_character(5, 2), dirichlet_character(3, 1))) == 15u);
  CHECK(!character_period(liouville()).has_value());
}

TEST_CASE("decomposition recovers f") {
  const MultFunc chi = dirichlet_character(5, 2);
  const MultFunc f = product(modify_character(chi), archimedean(0.4));
  const Decomposition dec = decompose(f, 2, chi, 0.4);
  const MultFunc chi_mod = modify_character(chi);
  for (u64 n = 1; n <= 300; ++n) {
    REQUIRE(near(dec.g.at(n) * dec.h.at(n), f.at(n)));
    REQUIRE(near(power(dec.g, 2).at(n), chi_mod.at(n)));
  }
}

TEST_CASE("complete multiplicativity on random pairs") {
  gen::Rng rng(2024);
  std::vector<MultFunc> funcs;
  for (const auto& s : gen::builtin_specs()) funcs.push_back(parse_spec(s));
  funcs.push_back(gen::random_prime_table(rng, 200));
  for (const auto& f : funcs) {
    for (int i = 0; i < 500; ++i) {
      const u64 m = rng.uniform(1, 10000);
      const u64 n = rng.uniform(1, 10000);
      REQUIRE(near(f.at(m * n), f.at(m) * f.at(n)));
    }
  }
}

TEST_CASE("power identity up to j = 12") {
  gen::Rng rng(5);
  for (const auto& s : gen::builtin_specs()) {
    const MultFunc f = parse_spec(s);
    for (u64 j = 0; j <= 12; ++j) {
      const MultFunc fj = power(f, static_cast<i64>(j));
      for (int i = 0; i < 20; ++i) {
        const u64 n = rng.uniform(1, 100000);
        REQUIRE(near(fj.at(n), ipow(f.at(n), j)));
      }
    }
  }
}

TEST_CASE("d-th root round trip for d in {2,3,4}") {
  gen::Rng rng(17);
  std::vector<MultFunc> funcs{liouville(), modify_character(dirichlet_character(7, 1)), archimedean(1.3),
                              gen::random_prime_table(rng, 500)};
  for (const auto& f : funcs) {
    for (u64 d : {2u, 3u, 4u}) {
      const MultFunc back = power(dth_root(f, d), static_cast<i64>(d));
      for (int i = 0; i < 200; ++i) {
        const u64 n = rng.uniform(1, 100000);
        REQUIRE(near(back.at(n), f.at(n)));
      }
    }
  }
}

TEST_CASE("indicator identity on n up to 10^4") {
  gen::Rng rng(3);
  const std::vector<std::pair<MultFunc, u64>> cases{
      {liouville(), 2}, {modify_character(dirichlet_character(7, 2)), 3}, {gen::random_root_table(rng, 4, 100), 4}};
  for (const auto& [f, d] : cases) {
    for (u64 n = 1; n <= 10000; ++n) {
      const double want = near(f.at(n), kOne, kUnitTol) ? 1.0 : 0.0;
      REQUIRE(indicator_one_mean(f, d, n) == want);
      REQUIRE(std::abs(indicator_one_average(f, d, n) - want) <= 1e-9);
    }
  }
}

TEST_CASE("additive functions") {
  const AddFunc h({{{13, 1}, {1.0, 0.0}}, {{17, 1}, {0.0, 2.0}}, {{13, 2}, {5.0, 0.0}}});
  CHECK(h(factorize(13 * 17)) == std::complex<double>{1.0, 2.0});
  CHECK(h(factorize(169 * 17)) == std::complex<double>{5.0, 2.0});
  CHECK(h(factorize(2)) == std::complex<double>{});
  const AddFunc r = h.restricted(13, 100);
  CHECK(r.values().size() == 1);
  gen::Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    u64 m = rng.uniform(1, 5000), n = rng.uniform(1, 5000);
    if (std::gcd(m, n) != 1) continue;
    CHECK(std::abs(h(factorize(m * n)) - h(factorize(m)) - h(factorize(n))) < 1e-12);
  }
}
