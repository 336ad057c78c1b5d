#pragma once

#include <string>

namespace smtjsim {

// Exit codes: 0 success, 1 validation/usage error, 2 runtime or numerical
// failure, 3 requested assertion failed (e.g. --assert-chirality).
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitAssertion = 3;

// Full command-line entry point (subcommands: transfer, search, montecarlo,
// scaling, edp). Exposed so main() stays a one-liner.
int run_main(int argc, char** argv);

}  // namespace smtjsim
