#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fock::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitDivergence = 2;

/// Runs one subcommand. `args` excludes the program name. Outputs are still
/// written when the exit code is kExitDivergence.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fock::cli
