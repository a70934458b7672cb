#pragma once

#include <iosfwd>

namespace contactlab::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;       // load, parse or evaluation error
inline constexpr int kExitCheckFailed = 2;  // an asserted check failed

// Entry point behind main(), with injectable streams for testing.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace contactlab::cli
