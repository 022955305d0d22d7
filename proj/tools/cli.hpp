#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pythreg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitResource = 3;

// Output of one subcommand before it is written anywhere.
struct Result {
  std::string summary;  // one line, no newline
  std::string csv;      // header plus rows, newline terminated
  std::string json;
  std::optional<std::complex<double>> value;  // set by average-valued commands
  std::optional<double> mass;
};

// Runs a command line (without the program name). Writes the summary line
// and, unless --out is given, the report body to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pythreg::cli
