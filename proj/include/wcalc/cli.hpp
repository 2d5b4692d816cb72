#ifndef WCALC_CLI_HPP
#define WCALC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wcalc {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wcalc

#endif
