#pragma once

#include <complex>
#include <string>

#include "pythreg/multfunc.hpp"
#include "pythreg/weights.hpp"

namespace pythreg {

enum class PairKind { TypeI, TypeII };

struct PairAverageReport {
  PairKind kind = PairKind::TypeI;
  std::string f_desc;
  u64 Q = 1;
  u64 N = 0;
  WeightConfig cfg;
  std::complex<double> value{};
  double weight_mass = 0;
  u64 runtime_cells = 0;
};

// (1/N^2) sum w(m,n) f(ell((Qm+1)^2 - (Qn)^2)) conj f(ell'(Qm+1)Qn).
PairAverageReport typeI_average(const MultFunc& f, u64 Q, const WeightConfig& cfg, u64 N);

// (1/N^2) sum w~(m,n) f(ell((Qm+1)^2 + (Qn)^2)) conj f(ell'(Qm+1)Qn).
PairAverageReport typeII_average(const MultFunc& f, u64 Q, const WeightConfig& cfg, u64 N);

// Mean over Q in Phi_K of the chosen average at fixed N.
std::complex<double> folner_q_average(const MultFunc& f, const WeightConfig& cfg, u64 K, u64 N, PairKind kind);

// max over Q, Q' in Phi_K of |L(Q) - L(Q')| with
// L(Q) = Q^{-it} (1/N^2) sum w~(m,n) f(ell((Qm+1)^2 + (Qn)^2)) conj f(ell'(Qm+1) n).
double q_stability(const MultFunc& f, const MultFunc& chi, double t, const WeightConfig& cfg, u64 K, u64 N);

// Logarithmic double average of f(n(n+1)) conj f(m^2) over m, n <= N.
std::complex<double> dlms_log_average(const MultFunc& f, u64 N);

std::string to_string(PairKind kind);
std::string pair_csv_header();
std::string pair_csv_row(const PairAverageReport& r);

}  // namespace pythreg
