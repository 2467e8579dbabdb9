#pragma once

#include <iosfwd>

namespace knndbscan::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidArgument = 2,
  kExitIoError = 3,
  kExitInternalError = 4,
};

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace knndbscan::cli
