#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pythreg/error.hpp"
#include "pythreg/multfunc.hpp"

namespace pythreg {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::istringstream in{std::string(text)};
    for (std::string t; in >> t;) tokens_.push_back(t);
  }

  MultFunc parse_all() {
    MultFunc f = parse();
    if (pos_ != tokens_.size()) fail("unexpected trailing token '" + tokens_[pos_] + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw InvalidArgument("parse_spec: " + msg); }

  const std::string& next(const char* what) {
    if (pos_ >= tokens_.size()) fail(std::string("expected ") + what + " at end of input");
    return tokens_[pos_++];
  }

  i64 integer(const char* what) {
    const std::string& t = next(what);
    try {
      std::size_t used = 0;
      const long long v = std::stoll(t, &used);
      if (used == t.size()) return v;
    } catch (const std::exception&) {
    }
    fail(std::string("expected integer ") + what + ", got '" + t + "'");
  }

  u64 positive(const char* what) {
    const i64 v = integer(what);
    if (v < 1) fail(std::string(what) + " must be >= 1");
    return static_cast<u64>(v);
  }

  double real(const char* what) {
    const std::string& t = next(what);
    try {
      std::size_t used = 0;
      const double v = std::stod(t, &used);
      if (used == t.size()) return v;
    } catch (const std::exception&) {
    }
    fail(std::string("expected number ") + what + ", got '" + t + "'");
  }

  MultFunc chartable() {
    const u64 q = positive("modulus");
    std::vector<UnitValue> table;
    for (u64 r = 0; r < q; ++r) {
      const double re = real("table value");
      const double im = real("table value");
      table.emplace_back(re, im);
    }
    return dirichlet_character_from_table(q, std::move(table));
  }

  MultFunc parse() {
    const std::string head = next("function");
    if (head == "one") return constant_one();
    if (head == "liouville") return liouville();
    if (head == "arch") return archimedean(real("t"));
    if (head == "char") {
      const u64 q = positive("modulus");
      return dirichlet_character(q, integer("index"));
    }
    if (head == "modchar") {
      const u64 q = positive("modulus");
      return modify_character(dirichlet_character(q, integer("index")));
    }
    if (head == "chartable") return chartable();
    if (head == "modify") return modify_character(parse());
    if (head == "prod") {
      MultFunc a = parse();
      MultFunc b = parse();
      return product(a, b);
    }
    if (head == "pow") {
      MultFunc a = parse();
      return power(a, integer("exponent"));
    }
    if (head == "conj") return conjugate(parse());
    if (head == "root") {
      MultFunc a = parse();
      return dth_root(a, positive("degree"));
    }
    if (head == "table") return load_prime_table(next("path"));
    if (head == "ptable") {
      const i64 k = integer("entry count");
      if (k < 0) fail("entry count must be >= 0");
      std::map<u64, UnitValue> values;
      for (i64 i = 0; i < k; ++i) {
        const i64 p = integer("prime");
        if (p < 2) fail("table key must be a prime");
        const double re = real("value");
        const double im = real("value");
        values[static_cast<u64>(p)] = {re, im};
      }
      const double dre = real("default value");
      const double dim = real("default value");
      return prime_table(std::move(values), {dre, dim});
    }
    fail("unknown function '" + head + "'");
  }

  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

MultFunc parse_spec(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace pythreg
