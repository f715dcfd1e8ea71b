#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ans::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitDomain = 2;

/// Runs one `ans` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ans::cli
