#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hallnum::cli {

// Exit codes: 0 success, 1 valid run with a negative result, 2 usage or
// domain error, 3 computational budget exhausted.
inline constexpr int exit_ok = 0;
inline constexpr int exit_negative = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_budget = 3;

/// Program entry: argv[0] is skipped, output goes to stdout/stderr.
int run(int argc, const char* const* argv);

/// Testable entry: args exclude the program name. JSON lands on `out`,
/// diagnostics on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hallnum::cli
