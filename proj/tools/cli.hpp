#pragma once

#include <string>
#include <vector>

namespace dhm::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kBudgetInfeasible = 3;
inline constexpr int kGeometryFailure = 4;

// Runs one subcommand. argv[0] is the program name.
int cli_main(int argc, const char* const* argv);
int cli_main(const std::vector<std::string>& args);

std::string version();

}  // namespace dhm::cli
