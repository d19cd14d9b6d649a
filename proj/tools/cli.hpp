#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cnflab::cli {

enum ExitCode : int {
  kOk = 0,
  kCertificateFail = 1,
  kUsage = 2,
  kRuntimeError = 3,
};

// Runs one CLI invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cnflab::cli
