#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace growpop {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitRuntime = 2 };

struct OracleResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Built-in oracle suite behind `growpop check`: constant-kernel decay, mean
/// conservation, jump formulas, the lambda = 1 exponential-growth sum and the
/// p = 1 Dawson closed form.
std::vector<OracleResult> run_builtin_oracles();

/// Entry point of the `growpop` tool. `args` excludes the program name.
int cmd_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace growpop
