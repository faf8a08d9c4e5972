#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace photon {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `photon` subcommand. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest round-trip decimal, independent of the global locale.
std::string format_double(double value);

}  // namespace photon
