#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace moodfilm {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // bad data, validation failure, unreadable file
inline constexpr int kExitUsage = 2;

// Runs the command line `args` (args[0] is the program name). Output goes to
// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace moodfilm
