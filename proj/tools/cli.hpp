#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ricfib::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitUsage = 3;

/// Entry point of the `ricfib` tool. Records go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ricfib::cli
