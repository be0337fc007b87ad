#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace thompson::cli {

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitUsage = 2;

/// Runs the command line; writes results to `out` and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckResult {
  bool pass = false;
  std::string detail;
};

struct Check {
  std::string name;
  /// Receives the per-check seed and the trial budget.
  std::function<CheckResult(std::uint64_t, std::size_t)> run;
};

/// The property campaign, in name order.
const std::vector<Check>& selftest_checks();

/// Seed for one check: a hash of the campaign seed and the check name, so a
/// check's outcome does not depend on which other checks run.
std::uint64_t check_seed(std::uint64_t seed, std::string_view name);

struct CheckOutcome {
  std::string name;
  CheckResult result;
};

/// Runs every check whose name starts with `filter`, on up to `threads`
/// worker threads. Results are ordered by name.
std::vector<CheckOutcome> run_selftest(std::uint64_t seed, std::size_t trials, unsigned threads = 0,
                                       std::string_view filter = {});

/// "CHECK <name> PASS|FAIL <detail>" lines followed by a summary line.
void write_report(std::ostream& out, const std::vector<CheckOutcome>& outcomes);

}  // namespace thompson::cli
