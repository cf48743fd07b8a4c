#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dectk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // bad data or a failed check
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dectk::cli
