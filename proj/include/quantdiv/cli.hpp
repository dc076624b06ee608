#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quantdiv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `quantdiv` command. Human tables go to `out`,
/// diagnostics to `err`; --output files are written directly.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quantdiv::cli
