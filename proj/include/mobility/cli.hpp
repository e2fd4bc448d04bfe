#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mobility {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitUsage = 64;

/// Runs the command line tool. `args` excludes the program name.
///
///   solve  <instance> [--config FILE] [--out FILE] [--trace CSV] [--threads N]
///   oracle <instance> [--method greedy|exhaustive]
///   verify <instance> <solution>
///   report <instance> <solution>
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mobility
