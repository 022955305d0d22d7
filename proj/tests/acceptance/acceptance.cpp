// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "perturbation.hpp"
#include "pythreg/concentration.hpp"
#include "pythreg/counting.hpp"
#include "pythreg/factor.hpp"
#include "pythreg/pair_averages.hpp"
#include "pythreg/parallel.hpp"
#include "pythreg/triples.hpp"
#include "pythreg/weights.hpp"

using namespace pythreg;

namespace {

int failures = 0;

void report(int id, const std::string& name, const std::function<std::string(bool&)>& body) {
  bool ok = true;
  std::string detail;
  try {
    detail = body(ok);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " " << id << " " << name << ": " << detail << std::endl;
}

std::string counting(bool& ok) {
  parallel::WorkerScope single(1);
  const auto start = std::chrono::steady_clock::now();
  const auto grid = grid_quadratic_factorize(7, 1, 0, 2000);
  const double w55 = w_pair_empirical(grid, 5, 5);
  const double w513 = w_pair_empirical(grid, 5, 13);
  ok = std::abs(w55 - 0.256) <= 0.02 && std::abs(w513 - 0.033558) <= 0.01;
  double worst = 0.0;
  const std::array<u64, 4> P{5, 13, 17, 29};
  for (u64 p : P)
    for (u64 q : P) worst = std::max(worst, std::abs(w_pair_empirical(grid, p, q) - w_pair_closed_form(p, q)));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ok = ok && worst <= 50.0 / 2000 && secs < 30.0;
  std::ostringstream s;
  s << "w(5,5)=" << w55 << " w(5,13)=" << w513 << " max grid error=" << worst << " time=" << secs << "s";
  return s.str();
}

std::string exact_concentration(bool& ok) {
  const MultFunc chi = dirichlet_character(5, 2);
  const MultFunc mod = modify_character(chi);
  std::ostringstream s;
  for (const auto& [name, f] : {std::pair<const char*, MultFunc>{"chi", chi}, {"modchi", mod}}) {
    const double lin = linear_concentration(f, chi, 0.0, 5, 30, 1000).lhs;
    const double quad = quadratic_concentration(f, chi, 0.0, 5, 30, 1, 0, 300).lhs;
    s << name << " linear=" << lin << " quadratic=" << quad << " ";
    ok = ok && lin <= 1e-12 && quad <= 1e-12;
  }
  return s.str();
}

std::string mean_identity(bool& ok) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<u64> support;
  for (u64 p : primes_up_to(100))
    if (p > 5 && p % 4 == 1) support.push_back(p);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::map<std::pair<u64, u32>, std::complex<double>> values;
    for (u64 p : support)
      if (rng() & 1) values[{p, 1}] = std::polar(unit(rng), 2 * M_PI * unit(rng));
    worst = std::max(worst, tk_additive(AddFunc(values), 5, 30, 1, 0, 100).exact_mean_check);
  }
  ok = worst <= 1e-12;
  std::ostringstream s;
  s << "max |mean - weighted sum| = " << worst;
  return s.str();
}

std::string folner(bool& ok) {
  // exact integer sum of lambda over the set
  auto lambda_sum = [](u64 K) {
    const FolnerSet s = folner_set(K);
    i64 total = 0;
    for (const auto& e : s.elements) {
      u64 omega = 0;
      for (u32 a : e) omega += a;
      total += omega % 2 == 0 ? 1 : -1;
    }
    return std::pair<i64, u64>{total, s.size()};
  };
  const auto [n5, d5] = lambda_sum(5);
  const auto [n7, d7] = lambda_sum(7);
  // 0.008 = 1/125 and 7^-4 = 1/2401
  ok = n5 * 1000 == static_cast<i64>(d5) * 8 && std::abs(n7) * 2401 == static_cast<i64>(d7);
  const double f5 = folner_average(liouville(), 5).real();
  const double f7 = std::abs(folner_average(liouville(), 7));
  ok = ok && std::abs(f5 - 0.008) <= 1e-15 && std::abs(f7 - 1.0 / 2401) <= 1e-15;
  std::ostringstream s;
  s << "K=5: " << n5 << "/" << d5 << "  K=7: |" << n7 << "/" << d7 << "|";
  return s.str();
}

std::string weights(bool& ok) {
  double least = 1.0;
  for (auto kind : {WeightKind::Hyperbolic, WeightKind::Elliptic})
    for (auto [l, lp] : std::vector<std::pair<u64, u64>>{{1, 1}, {1, 2}, {2, 1}})
      for (double d : {0.05, 0.1}) least = std::min(least, weight_density({l, lp, d, kind}, 2000));
  const auto r = typeI_average(constant_one(), 7, {1, 2, 0.1, WeightKind::Hyperbolic}, 2000);
  const double gap = std::abs(r.value - std::complex<double>{r.weight_mass, 0.0});
  ok = least > 0.0 && gap <= 1e-12;
  std::ostringstream s;
  s << "min density=" << least << " |typeI(1) - mass|=" << gap;
  return s.str();
}

std::string triples(bool& ok) {
  const MultFunc f = modify_character(dirichlet_character(5, 2));
  const auto r = search_level_set_triples(f, 50);
  bool seen = false;
  for (const auto& h : r.hits) {
    ok = ok && h.x * h.x + h.y * h.y == h.z * h.z;
    for (u64 v : {h.x, h.y, h.z}) ok = ok && std::abs(f.at(v) - UnitValue{1.0, 0.0}) <= 1e-12;
    seen = seen || (h.x == 16 && h.y == 30 && h.z == 34);
  }
  // exhaustive enumeration
  u64 brute = 0;
  for (u64 z = 1; z <= 50; ++z)
    for (u64 x = 1; x < z; ++x)
      for (u64 y = x + 1; y < z; ++y)
        if (x * x + y * y == z * z && f.at(x) == UnitValue{1.0, 0.0} && f.at(y) == UnitValue{1.0, 0.0} &&
            f.at(z) == UnitValue{1.0, 0.0})
          ++brute;
  ok = ok && seen && !r.hits.empty() && brute == r.hits.size();
  return std::to_string(r.hits.size()) + " hits, enumeration finds " + std::to_string(brute);
}

std::string grid_oracle(bool& ok) {
  const std::vector<std::array<i64, 3>> configs{{1, 0, 0}, {12, 1, 0}, {30, 1, 0}, {7, -3, 2}};
  u64 cells = 0;
  for (auto [Q, a, b] : configs) {
    const auto g = grid_quadratic_factorize(Q, a, b, 50);
    for (u64 m = 1; m <= 50; ++m)
      for (u64 n = 1; n <= 50; ++n) {
        const FactorView c = g.cell(m, n);
        const Factorization want = factorize(g.value(m, n));
        if (std::vector<PrimePower>(c.factors.begin(), c.factors.end()) == want.factors) ++cells;
      }
  }
  ok = cells == 4 * 2500;
  return std::to_string(cells) + "/10000 cells agree";
}

std::string bounded_ratios(bool& ok) {
  const double C = suite::suite_constant(suite::perturbation_suite());
  const auto grid = grid_quadratic_factorize(7, 1, 0, 500);
  double worst = 0.0;
  for (u64 l : {2, 5, 10, 13, 25, 65}) worst = std::max(worst, *w_divisor(grid, l).ratio);
  ok = C < 100.0 && worst < 4.0;
  std::ostringstream s;
  s << "concentration suite C=" << C << " divisor ratio max=" << worst;
  return s.str();
}

std::string determinism(bool& ok) {
  const std::vector<std::vector<std::string>> commands{
      {"counting", "wpair", "--N", "400", "--Q", "7", "--a", "1", "--p", "5,13,17,29", "--q", "5,13,17,29"},
      {"conc-linear", "--f", "prod modchar 5 2 ptable 1 7 -1 0 1 0", "--chi", "char 5 2", "--K", "5", "--Q", "30", "--N",
       "500"},
      {"conc-quadratic", "--f", "prod modchar 5 2 ptable 1 13 -1 0 1 0", "--chi", "char 5 2", "--K0", "5", "--Q", "30", "--a",
       "1", "--N", "80"},
      {"weights", "density", "--kind", "elliptic", "--ell", "2", "--ellp", "1", "--N", "500"},
      {"pairs", "type1", "--f", "liouville", "--N", "300", "--Q", "7"},
      {"pairs", "type2", "--f", "arch 0.7", "--N", "200", "--Q", "5"},
      {"dlms", "--f", "liouville", "--N", "2000"},
      {"triples", "search", "--f", "modchar 13 4", "--bound", "2000"},
  };
  std::size_t same = 0;
  for (const auto& cmd : commands) {
    std::vector<std::string> outputs;
    for (const char* w : {"1", "4", "16"}) {
      std::vector<std::string> args{"--workers", w};
      args.insert(args.end(), cmd.begin(), cmd.end());
      std::ostringstream out, err;
      if (cli::run(args, out, err) != cli::kExitOk) throw std::runtime_error(cmd[0] + ": " + err.str());
      outputs.push_back(out.str());
    }
    if (outputs[0] == outputs[1] && outputs[0] == outputs[2]) ++same;
  }
  ok = same == commands.size();
  return std::to_string(same) + "/" + std::to_string(commands.size()) + " commands byte-identical for workers 1,4,16";
}

}  // namespace

int main() {
  report(1, "counting closed forms", counting);
  report(2, "exact concentration", exact_concentration);
  report(3, "exact mean identity", mean_identity);
  report(4, "Folner decay", folner);
  report(5, "weight positivity", weights);
  report(6, "triple search", triples);
  report(7, "grid oracle", grid_oracle);
  report(8, "bounded ratios", bounded_ratios);
  report(9, "determinism", determinism);
  return failures == 0 ? 0 : 1;
}
