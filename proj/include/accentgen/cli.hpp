#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace accentgen::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDataError = 1;
inline constexpr int kUsageError = 2;

// Runs one `accentgen` invocation.  `args` excludes the program name.  Paths
// given as "-" use `in` / `out`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace accentgen::cli
