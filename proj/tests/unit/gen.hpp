#pragma once

// Small seeded generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "pythreg/multfunc.hpp"
#include "pythreg/primes.hpp"

namespace gen {

using pythreg::u64;

class Rng {
 public:
  explicit Rng(u64 seed) : eng_(seed) {}

  u64 uniform(u64 lo, u64 hi) { return std::uniform_int_distribution<u64>(lo, hi)(eng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  bool coin() { return uniform(0, 1) == 1; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[uniform(0, v.size() - 1)];
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline const std::vector<std::string>& builtin_specs() {
  static const std::vector<std::string> specs = {
      "one",        "liouville",       "char 5 2",          "char 7 1",          "modchar 5 2",
      "modchar 13 3", "arch 0.7",      "prod liouville char 5 1", "pow char 11 3 4", "conj modchar 7 2",
      "root liouville 3", "prod arch -1.5 modchar 3 1",
  };
  return specs;
}

inline pythreg::MultFunc random_builtin(Rng& rng) { return pythreg::parse_spec(rng.pick(builtin_specs())); }

// A circle-valued function with random values at the primes below `up_to`.
inline pythreg::MultFunc random_prime_table(Rng& rng, u64 up_to) {
  std::map<u64, pythreg::UnitValue> values;
  for (u64 p : pythreg::primes_up_to(up_to)) values[p] = std::polar(1.0, rng.real(-3.14159, 3.14159));
  return pythreg::prime_table(std::move(values));
}

// A d-th root of unity valued function with random exponents at small primes.
inline pythreg::MultFunc random_root_table(Rng& rng, u64 d, u64 up_to) {
  std::map<u64, pythreg::UnitValue> values;
  for (u64 p : pythreg::primes_up_to(up_to))
    values[p] = pythreg::root_of_unity(static_cast<pythreg::i64>(rng.uniform(0, d - 1)), d);
  return pythreg::prime_table(std::move(values));
}

}  // namespace gen
