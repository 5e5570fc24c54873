#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isopar::cli {

// Exit codes shared by all subcommands.
inline constexpr int kOk = 0;
inline constexpr int kRejected = 1;       // inadmissible verdict or failed verification
inline constexpr int kInputError = 2;
inline constexpr int kNonConvergence = 3;

/// Runs the command line `args` (without the program name).  Reports go to
/// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace isopar::cli
