#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lsw::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kInternalError = 1,
  kUsageError = 2,   ///< bad flags, unreadable or invalid config, unwritable output
  kDomainError = 3,  ///< numeric domain violation inside a kernel
};

/// Runs one invocation. `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lsw::cli
