#pragma once

#include <string>
#include <vector>

namespace fixlab {

// Exit statuses shared by every subcommand.
inline constexpr int kExitSuccess = 0;   // certified / converged / all-pass
inline constexpr int kExitNegative = 1;  // refuted / diverged / discrepancy found
inline constexpr int kExitUsage = 2;     // usage or config error
inline constexpr int kExitNumeric = 3;   // NaN or infinity encountered

// Runs the command line (without the program name). Diagnostics go to the
// error stream; results go to stdout or the requested output file.
int run_cli(const std::vector<std::string>& args);

}  // namespace fixlab
