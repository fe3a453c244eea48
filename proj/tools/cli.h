#ifndef GLIMPSE_TOOLS_CLI_H_
#define GLIMPSE_TOOLS_CLI_H_

#include <iosfwd>

namespace glimpse::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

// Entry point for the `glimpse` binary: subcommands score, summarize, eval
// and demo. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace glimpse::cli

#endif  // GLIMPSE_TOOLS_CLI_H_
