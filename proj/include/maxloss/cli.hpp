#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maxloss::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitBudget = 2;

/// Entry point shared by the binary and the tests. `args` excludes the
/// program name; "-" or no input path reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace maxloss::cli
