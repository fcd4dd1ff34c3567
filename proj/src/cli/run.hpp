#pragma once

#include <ostream>

namespace planar::cli {

// Full command-line entry point, parameterized on the output streams so the
// tests can drive it in-process. Returns the process exit code: 0 success,
// 1 usage error, 2 data error, 3 algorithmic failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace planar::cli
