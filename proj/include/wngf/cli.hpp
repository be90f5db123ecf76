#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace wngf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one CLI invocation. `args` excludes the program name. Summaries go to
/// `out`; diagnostics go to `err` as single lines prefixed with the failing
/// file or flag.
int run(std::span<const std::string> args, std::ostream &out, std::ostream &err);

} // namespace wngf::cli
