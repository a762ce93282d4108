#pragma once

#include <string>
#include <vector>

namespace adversim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitUnsupported = 65;

// Front end behind the adversim binary. `args` excludes the program name.
// The same entry point backs the tests, so file outputs are byte-identical
// whether driven in-process or from the shell.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace adversim::cli
