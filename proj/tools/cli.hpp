#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cuav::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

/// Runs one command. args excludes the program name. Text results go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cuav::cli
