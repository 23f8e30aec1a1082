#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace ttq::cli {

enum ExitCode : int { Success = 0, Mismatch = 1, Usage = 2 };

/// Runs one command line (without the program name) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SuiteRow {
  std::string group;
  std::string label;
  bool passed = false;
  std::string detail;
};

/// Fixed list of reproduction checks, in declaration order.
std::vector<SuiteRow> check_suite(std::uint64_t seed);

}  // namespace ttq::cli
