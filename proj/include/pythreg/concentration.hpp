#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "pythreg/multfunc.hpp"

namespace pythreg {

struct ConcentrationReport {
  std::string kind;  // "linear", "shifted_linear" or "quadratic"
  std::string f_desc;
  std::string chi_desc;
  double t = 0;
  u64 K = 0;
  u64 Q = 0;
  u64 N = 0;
  double lhs = 0;
  std::complex<double> drift{1.0, 0.0};
  std::vector<std::pair<std::string, double>> bound_terms;
  double bound_total = 0;
  double ratio = 0;
  u64 truncation = 0;  // upper end used for the distance tails
  std::vector<std::string> flags;
};

struct LinearOptions {
  // Upper end for D(f, chi n^{it}; K, inf); 0 means Q*N+1.
  u64 tail_limit = 0;
};

ConcentrationReport linear_concentration(const MultFunc& f, const MultFunc& chi, double t, u64 K, u64 Q, u64 N,
                                         const LinearOptions& opt = {});

ConcentrationReport shifted_linear_concentration(const MultFunc& f, const MultFunc& chi, double t, u64 K, u64 Q, i64 l1,
                                                 i64 l2, u64 N, const LinearOptions& opt = {});

struct QuadraticOptions {
  // Upper end for the Q^2 D_1(N, .) term; 0 means 3 Q^2 N^2.
  u64 tail_limit = 0;
};

ConcentrationReport quadratic_concentration(const MultFunc& f, const MultFunc& chi, double t, u64 K0, u64 Q, i64 a,
                                            i64 b, u64 N, const QuadraticOptions& opt = {});

struct TkReport {
  u64 K0 = 0;
  u64 Q = 0;
  i64 a = 0;
  i64 b = 0;
  u64 N = 0;
  double variance_lhs = 0;
  std::complex<double> H_N{};
  double exact_mean_check = 0;
  std::complex<double> mean_h1{};
  std::complex<double> weighted_h1{};  // sum_p h1(p) w_{N,Q}(p)
  std::vector<std::pair<std::string, double>> bound_terms;
  double bound_total = 0;
  double ratio = 0;
};

TkReport tk_additive(const AddFunc& h, u64 K0, u64 Q, i64 a, i64 b, u64 N);

// Checks Q = prod_{p <= K0} p^{a_p} with every a_p >= 1.
bool is_full_smooth_modulus(u64 Q, u64 K0);

}  // namespace pythreg
