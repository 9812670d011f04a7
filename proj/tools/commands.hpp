#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gradss::cli {

enum ExitCode { kOk = 0, kCertificateFailure = 1, kUsageError = 2 };

/// Dispatches one command line (without the program name).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gradss::cli
