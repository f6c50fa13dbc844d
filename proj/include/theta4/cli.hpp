#pragma once

#include <iosfwd>

namespace theta4::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kInputError = 2, kRestartsExhausted = 3, kMismatch = 4 };

// Entry point of the theta4 executable; subcommands build | tritangents | steiner | quotient | verify.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace theta4::cli
