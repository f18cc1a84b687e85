#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ipl/interaction.hpp"

namespace ipl::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumerical = 3 };

/// A real number, "pi", or a rational multiple of pi such as "pi/4", "3*pi/4", "2pi".
double parse_scalar(std::string_view text);

/// "lo:hi:count". Log grids need lo > 0.
struct GridSpec {
  double lo;
  double hi;
  int count;
  bool log;
};
GridSpec parse_grid(std::string_view text, bool log);
std::vector<double> expand(const GridSpec& grid);

/// Accepts repeated values and comma-separated lists.
std::vector<InteractionParams> parse_exponents(const std::vector<std::string>& items);

struct VerifyEntry {
  std::string name;
  double measured;
  double target;
  double tolerance;  // pass iff |measured - target| <= tolerance
  bool passed() const;
};

/// Invariant suite over all library modules; takes a few seconds.
std::vector<VerifyEntry> run_verify_suite();

/// Entry point of the `ipl` tool. Returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace ipl::cli
