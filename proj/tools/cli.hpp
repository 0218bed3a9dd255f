#pragma once

#include <iosfwd>

namespace trustclust::cli {

/// Runs the `trustclust` command line. Returns the process exit status:
/// 0 success, 1 domain or validation error, 2 I/O error, 3 numeric failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trustclust::cli
