#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace blw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. args excludes the program name.
/// Exit codes: 0 success, 1 a verification check above tolerance, 2 invalid usage or input.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// The nine figure ids accepted by plot-data, in figure order.
std::span<const char* const> figure_ids();

}  // namespace blw::cli
