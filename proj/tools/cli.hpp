// Command-line front end: solve, compare, counterexample, curvature.

#ifndef SSNMF_TOOLS_CLI_HPP
#define SSNMF_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace ssnmf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ssnmf::cli

#endif  // SSNMF_TOOLS_CLI_HPP
