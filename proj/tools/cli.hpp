#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ptspec::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRunError = 1;    ///< domain or solver error
inline constexpr int kUsageError = 2;  ///< bad arguments, unknown names

/// Runs one command. Results go to the --out file when given, otherwise to
/// `out`; the one-line summary goes to `out` when --out is given and to
/// `err` otherwise, as do error messages.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptspec::cli
