#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "symcone/errors.hpp"

namespace symcone::cli {

enum class Subcommand { Sample, Density, Laplace, Split, VerifyLukacs, VerifyNegative, CheckFunceq, AlgebraInfo };

enum class OutputFormat { Json, Csv };

/// Exit codes: success, verification failure, usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Validated command line. Element-valued flags (--scale, --x, --y, --t) hold
/// an element source: "zero", a number k meaning k*e, comma-separated
/// coordinates, or the path of an element JSON file.
struct Command {
  Subcommand subcommand = Subcommand::AlgebraInfo;
  std::string algebra = "symr:3";
  double p = 4.0;
  double p1 = 4.0;
  double p2 = 4.0;
  std::size_t n = 0;  ///< 0 selects the subcommand default
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double level = 0.05;
  std::size_t permutations = 500;
  std::string method = "auto";
  std::size_t projections = 16;
  double tol = 1e-10;
  std::string scale = "1";
  std::string scale2 = "3";
  std::string x;
  std::string y;
  std::string t;
  std::string equation = "olkin-baker";
  std::string family = "l=0,c1=1,c2=1,k=0";
  std::string field = "logdet";
  std::string out_path;
  OutputFormat format = OutputFormat::Json;
  unsigned threads = 1;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Thrown by parse for --help; what() is the help text.
class HelpRequested : public Error {
 public:
  using Error::Error;
};

/// Parses arguments (without the program name). Throws UsageError with an
/// actionable message for unknown subcommands or flags, malformed algebra
/// specs and shapes at or below dim/r - 1.
Command parse(std::span<const std::string> args);

/// Executes a parsed command, writing the report to `out` (or --out) and
/// diagnostics to `err`. Returns one of the exit codes above.
int run(const Command& cmd, std::ostream& out, std::ostream& err);

/// parse + run with usage errors mapped to kExitUsage.
int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace symcone::cli
