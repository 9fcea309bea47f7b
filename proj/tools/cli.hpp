#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fra::cli {

/// Exit codes: 0 definite answer, 2 budget exhausted, 1 error.
inline constexpr int kOk = 0;
inline constexpr int kError = 1;
inline constexpr int kUnknown = 2;

/// `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// FRA_DEFAULT_BUDGET when set to a positive integer, else 1000.
std::size_t default_budget();

}  // namespace fra::cli
