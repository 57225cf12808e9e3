#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nsbox::cli {

// Stable exit-code contract of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Parses `args` (without the program name) and runs one subcommand.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Directory holding the bundled fixture files.
std::string data_dir();

}  // namespace nsbox::cli
