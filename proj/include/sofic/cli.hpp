#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sofic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInputError = 2;

/// Runs one subcommand. args[0] is the program name. Reports go to the
/// --report path when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace sofic::cli
