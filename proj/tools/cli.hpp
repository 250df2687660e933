#pragma once

#include <iosfwd>

namespace mub::cli {

// Exit codes.
inline constexpr int kRan = 0;
inline constexpr int kUsage = 2;
inline constexpr int kNonexistent = 10;
inline constexpr int kFound = 11;
inline constexpr int kInconclusive = 12;

// Runs one command line. Reports go to `out` (unless --output names a file),
// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mub::cli
