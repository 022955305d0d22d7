#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pythreg/multfunc.hpp"

namespace pythreg {

enum class WeightKind { Hyperbolic, Elliptic };

struct WeightConfig {
  u64 ell = 1;
  u64 ell_prime = 1;
  double delta = 0.1;
  WeightKind kind = WeightKind::Hyperbolic;
};

// Throws InvalidArgument unless 0 < delta < 1/2 and ell, ell' >= 1.
void validate(const WeightConfig& cfg);

std::string to_string(WeightKind kind);
WeightKind weight_kind_from_string(const std::string& s);

// 1 on |phi| <= delta/2, 0 on |phi| >= delta, linear in between, where
// z = e(phi) with phi in [-1/2, 1/2).
double trapezoid(UnitValue z, double delta);
// The same profile on the arc coordinate phi (in turns).
double trapezoid_turns(double phi, double delta);

// Arc coordinate (turns, reduced to [-1/2, 1/2)) of
// (ell * (m^2 -+ n^2))^i * (ell' m n)^{-i}.
double weight_phase(u64 m, u64 n, const WeightConfig& cfg);

double weight(u64 m, u64 n, const WeightConfig& cfg);

struct ResonanceSlope {
  double a = 0;
  u64 k = 0;
  double b = 0;  // elliptic only
  bool degenerate = false;
};

ResonanceSlope resonance_slope(const WeightConfig& cfg);

// (1/N^2) sum_{m,n <= N} weight(m, n); N >= 100.
double weight_density(const WeightConfig& cfg, u64 N);

std::string weight_density_csv_header();
std::string weight_density_csv_row(const WeightConfig& cfg, u64 N, double density);

// ---------------------------------------------------------------------------

struct FolnerSet {
  u64 K = 0;
  std::vector<u64> primes;                 // p <= K
  std::vector<std::vector<u32>> elements;  // exponent vectors, K < a_p <= 2K
  std::vector<std::optional<u64>> values;  // Q when it is at most 2^63

  std::size_t size() const { return elements.size(); }
  // Factorization of element i (n = 0 when Q is not materialized).
  Factorization factorization(std::size_t i) const;
};

inline constexpr u64 kFolnerSizeCap = 1'000'000;

// All exponent vectors in odometer order (last prime fastest). K >= 2;
// K^{pi(K)} above 10^6 -> ResourceLimit.
FolnerSet folner_set(u64 K);

// Mean of f over Phi_K, evaluated from exponent vectors.
std::complex<double> folner_average(const MultFunc& f, u64 K);
std::complex<double> folner_average(const MultFunc& f, const FolnerSet& set);

}  // namespace pythreg
