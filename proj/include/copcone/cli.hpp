#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace copcone {

inline constexpr int kExitIn = 0;
inline constexpr int kExitNotIn = 1;
inline constexpr int kExitUndecided = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;

/// Runs the command line `args` (without the program name). The JSON report
/// goes to `out`, diagnostics to `err`; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace copcone
