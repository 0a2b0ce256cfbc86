#pragma once

#include <string>
#include <vector>

namespace knotconc {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitHypothesis = 2;
inline constexpr int kExitResource = 3;

struct RunResult {
    int exit_code = kExitOk;
    std::string out;
    std::string err;
};

/// Runs one command. args excludes the program name, e.g.
/// {"rho0", "trefoil", "--tol", "1e-9"} or {"--doc", "d.json", "verdict", "ex44"}.
RunResult run(const std::vector<std::string>& args);

} // namespace knotconc
