#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace wsde::cli {

inline constexpr std::string_view kVersion = "1.0.0";

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kIoFailure = 1,
    kUsage = 2,
    kNotConverged = 3, // also numerical failures such as an Euler sign flip
    kInvalidData = 4,
};

/// Entry point of the `wsde` tool. `args` excludes the program name.
/// Subcommands: simulate, estimate, mc, scan, moments.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wsde::cli
