#pragma once

#include <iosfwd>

namespace segbench {

/// Exit codes: 0 success, 1 usage or configuration error, 2 data error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace segbench
