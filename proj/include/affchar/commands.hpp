#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace affchar {

inline constexpr const char* kToolVersion = "1.0.0";

/// Runs one CLI invocation and writes the result document to `out`.
/// Exit codes: 0 = success / all checks passed, 1 = a mathematical check
/// failed, 2 = invalid input (with a machine-readable error document).
/// Output is byte-deterministic for identical inputs.
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace affchar
