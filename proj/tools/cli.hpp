#pragma once

#include <ostream>

namespace isobary::cli {

/// Exit codes: 0 all assertive scans passed, 1 an assertive scan failed or
/// an evaluation error occurred, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace isobary::cli
