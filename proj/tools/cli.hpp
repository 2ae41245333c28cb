#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace redlab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitBudget = 2,
  kExitClaimViolated = 3,
};

/// Runs one subcommand (compare | oracle | verify | sweep). `args` excludes
/// the program name. Reports go to `out` (or the --out file); diagnostics
/// go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Statespace guard: REDLAB_MAX_ENUM_BITS if set, else `configured`, else 24.
int resolve_enum_bits(std::optional<int> configured);

}  // namespace redlab::cli
