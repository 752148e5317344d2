#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace frametk::cli {

/// Exit codes: 0 success, 1 internal failure, 2 input error.
inline constexpr int kOk = 0;
inline constexpr int kInternalError = 1;
inline constexpr int kInputError = 2;

/// args excludes the program name. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace frametk::cli
