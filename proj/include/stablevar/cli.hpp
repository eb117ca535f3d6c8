#pragma once

#include <iosfwd>

namespace stablevar::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;  // verify ran but the scenario did not pass; usage errors
inline constexpr int kUnwritableOutput = 2;
inline constexpr int kBadInput = 3;
inline constexpr int kInfeasible = 4;
inline constexpr int kUnknownScenario = 5;

/// Runs `stablevar <subcommand> [flags]` in process. Normal output goes to
/// out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stablevar::cli
