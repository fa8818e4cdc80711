#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zonalpd::cli {

/// Runs one CLI invocation (args excludes the program name).
/// Exit codes: 0 success; 1 numerical failure or unmet --expect-positive /
/// root-deviation gate; 2 argument or input-format errors; 3 polya verdict
/// positive_definite (not strict); 4 polya verdict violated or inconclusive;
/// 5 interpolation poisedness failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zonalpd::cli
