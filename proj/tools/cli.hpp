#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace renyi::cli {

/// Process exit statuses.
enum ExitCode : int { kOk = 0, kUsage = 2, kDomain = 3, kIo = 4 };

/// Runs the renyi-gof command line. `args` excludes the program name.
/// Results go to `out` unless redirected with -o; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace renyi::cli
