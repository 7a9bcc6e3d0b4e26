#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specpath {

// Process exit codes.
inline constexpr int kExitPathFound = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNoPath = 2;
inline constexpr int kExitMismatch = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitDataError = 65;

// Entry point of the `specpath` tool: `plan`, `sweep` and `verify` subcommands. `args` excludes
// the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specpath
