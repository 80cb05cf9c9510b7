#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nikulin::cli {

enum ExitCode : int { kSuccess = 0, kDomainFailure = 1, kUsageFailure = 2 };

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nikulin::cli
