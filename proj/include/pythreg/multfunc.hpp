#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pythreg/factor.hpp"

namespace pythreg {

// A value of a multiplicative function: a point of the closed unit disk.
using UnitValue = std::complex<double>;

// Absolute tolerance for comparing UnitValues.
inline constexpr double kUnitTol = 1e-9;

inline bool approx_equal(UnitValue a, UnitValue b, double tol = kUnitTol) { return std::abs(a - b) <= tol; }

// e(turns) = exp(2 pi i turns), exact at multiples of a quarter turn.
UnitValue unit_from_turns(double turns);

// e(k/m) for integers, exact at multiples of a quarter turn.
UnitValue root_of_unity(i64 k, u64 m);

// Angle of z in turns, normalized to [-1/2, 1/2). Values within 1e-12 of
// +1/2 are mapped to -1/2 so that -1 always lands on the closed end.
double turns_of(UnitValue z);

class MultFunc;

namespace spec {

struct One {};
struct Liouville {};
struct Archimedean {
  double t;
};
// Values of a Dirichlet character on residues mod `modulus`. `index` is the
// exponent j for prime moduli built by dirichlet_character; -1 for tables.
struct Character {
  u64 modulus;
  i64 index;
  std::vector<UnitValue> table;
};
struct ModifiedCharacter {
  Character base;
};
struct PrimeTable {
  std::map<u64, UnitValue> values;
  UnitValue fallback{1.0, 0.0};
};
struct Product {
  std::vector<MultFunc> factors;
};
struct Power {
  std::shared_ptr<const MultFunc> base;
  i64 exponent;
};
struct Conjugate {
  std::shared_ptr<const MultFunc> base;
};
struct Root {
  std::shared_ptr<const MultFunc> base;
  u64 degree;
};

}  // namespace spec

// Symbolic completely multiplicative function with values in the closed unit
// disk. Immutable; copies share the expression tree.
class MultFunc {
 public:
  using Node = std::variant<spec::One, spec::Liouville, spec::Archimedean, spec::Character, spec::ModifiedCharacter,
                            spec::PrimeTable, spec::Product, spec::Power, spec::Conjugate, spec::Root>;

  MultFunc();  // the constant function 1
  explicit MultFunc(Node node);

  const Node& node() const { return *node_; }

  // f(p) for a prime p.
  UnitValue at_prime(u64 p) const;
  // f(n) from a factorization; Archimedean leaves use n itself when known.
  UnitValue operator()(FactorView f) const;
  // f(n) for n >= 1 (factorizes internally).
  UnitValue at(u64 n) const;

  // True when every value lies on the unit circle (never 0).
  bool circle_valued() const;

  // Mini-language form accepted by parse_spec (tables defined in code are
  // written inline).
  std::string describe() const;

 private:
  std::shared_ptr<const Node> node_;
};

// Leaves.
MultFunc constant_one();
MultFunc liouville();
MultFunc archimedean(double t);
// Character mod the prime q with chi(g^k) = e(jk/(q-1)) for the least
// primitive root g. Composite q -> Unsupported.
MultFunc dirichlet_character(u64 q, i64 j);
// Character from explicit residue values (any modulus); validated.
MultFunc dirichlet_character_from_table(u64 q, std::vector<UnitValue> table);
MultFunc prime_table(std::map<u64, UnitValue> values, UnitValue fallback = {1.0, 0.0});
// Lines "p re im"; an optional line "default re im" sets the fallback.
MultFunc load_prime_table(const std::string& path);

// Combinators.
MultFunc modify_character(const MultFunc& chi);
MultFunc product(const MultFunc& lhs, const MultFunc& rhs);
// f^j; negative j means conj(f)^|j|, which is the inverse on the circle.
MultFunc power(const MultFunc& f, i64 j);
MultFunc conjugate(const MultFunc& f);
// g with g(p) = e(theta_p / d), f(p) = e(theta_p), theta_p in [-1/2, 1/2).
MultFunc dth_root(const MultFunc& f, u64 d);

enum class CombineOp { Product, Power, Conjugate };
MultFunc combine(CombineOp op, const std::vector<MultFunc>& args, i64 exponent = 1);

// Modulus q when f is a product/power/conjugate of Dirichlet characters (1
// for the constant function); nullopt otherwise.
std::optional<u64> character_period(const MultFunc& f);

// 1 if f(n) = 1 else 0, for f with values in the d-th roots of unity.
// Throws InvalidArgument when f(n)^d != 1.
double indicator_one_mean(const MultFunc& f, u64 d, u64 n);
// The same indicator computed as Re E_{0<=j<d} f(n)^j.
double indicator_one_average(const MultFunc& f, u64 d, u64 n);

// Decomposition f = g*h with g^d = chi~ and h^d = f^d * conj(chi~), h built by
// dth_root of f^d conj(chi~) n^{-it} times n^{it/d}.
struct Decomposition {
  MultFunc g;
  MultFunc h;
};
Decomposition decompose(const MultFunc& f, u64 d, const MultFunc& chi, double t);

// Parses the mini-language: "one", "liouville", "char q j", "modchar q j",
// "arch t", "prod A B", "pow A j", "conj A", "root A d", "table path",
// "ptable k p1 re1 im1 ... pk rek imk dre dim".
MultFunc parse_spec(std::string_view text);

// ---------------------------------------------------------------------------
// Additive functions.
// ---------------------------------------------------------------------------

// h(n) = sum over p^k || n of h(p^k); unlisted prime powers map to 0.
class AddFunc {
 public:
  AddFunc() = default;
  explicit AddFunc(std::map<std::pair<u64, u32>, std::complex<double>> values) : values_(std::move(values)) {}

  std::complex<double> at_prime_power(u64 p, u32 k) const;
  std::complex<double> operator()(FactorView f) const;
  const std::map<std::pair<u64, u32>, std::complex<double>>& values() const { return values_; }

  // Copy keeping only the entries with lo < p <= hi.
  AddFunc restricted(double lo, double hi) const;

 private:
  std::map<std::pair<u64, u32>, std::complex<double>> values_;
};

// Lines "p re im" (exponent 1) or "p k re im".
AddFunc load_add_table(const std::string& path);

}  // namespace pythreg
