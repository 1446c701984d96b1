#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nullcone {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 2;
constexpr int kExitBudget = 3;
constexpr int kExitUsage = 64;

/// Runs the `nullcone` command line; `args` excludes the program name.
/// Records go to `out` (or the --out path), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nullcone
