#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace goedel::cli {

enum class OutputFormat { Text, Json };

struct RunConfig {
  /// Largest formula depth for enumerations (lindenbaum --depth).
  std::size_t depth_budget = 3;
  /// Vector budget of clone closures.
  std::size_t clone_budget = 250'000;
  /// Largest universe of bounded first-order checks.
  std::size_t max_universe = 3;
  /// Valuation budget of bounded first-order checks.
  std::uint64_t search_budget = 200'000'000;
  std::uint64_t seed = 1;
  OutputFormat output_format = OutputFormat::Text;
};

/// Defaults with GOEDEL_BUDGET (if set) replacing the clone and search
/// budgets. Throws std::invalid_argument for a malformed value.
RunConfig default_config();

enum ExitCode : int {
  kHolds = 0,
  kFails = 1,
  kInconclusive = 2,
  kUsage = 3,
  kInternal = 4,
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace goedel::cli
