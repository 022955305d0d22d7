#pragma once

#include <optional>
#include <string>

#include "pythreg/factor.hpp"

namespace pythreg {

struct CountingReport {
  u64 N = 0;
  i64 Q = 0;
  i64 a = 0;
  i64 b = 0;
  u64 p = 0;
  u64 q = 0;  // for the divisor count: l in p, q = 0
  double empirical = 0;
  std::optional<double> closed_form;
  double abs_error = 0;
  std::optional<double> bound_rhs;  // Q^2 / l
  std::optional<double> ratio;      // empirical * l / Q^2
};

// Share of cells (m, n) in [N]^2 with p || v(m,n) and q || v(m,n).
double w_pair_empirical(u64 N, i64 Q, i64 a, i64 b, u64 p, u64 q);
double w_pair_empirical(const GridFactorSieve& grid, u64 p, u64 q);

// (2/p)(1-1/p)^2 for p = q, (4/pq)(1-1/p)^2(1-1/q)^2 otherwise.
double w_pair_closed_form(u64 p, u64 q);

// Empirical and closed form together.
CountingReport w_pair_report(const GridFactorSieve& grid, u64 p, u64 q);

// Share of cells with l | v(m,n), against Q^2 / l.
CountingReport w_divisor(u64 N, i64 Q, i64 a, i64 b, u64 l);
CountingReport w_divisor(const GridFactorSieve& grid, u64 l);

std::string counting_csv_header();
std::string counting_csv_row(const CountingReport& r);

}  // namespace pythreg
