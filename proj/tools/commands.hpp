#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bz::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 1;
inline constexpr int kDisconnected = 2;
inline constexpr int kCheckFailed = 3;
inline constexpr int kNumericalError = 4;

/// Runs the command line `args` (without the program name). Results go to
/// `out` unless -o is given; reports and diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bz::cli
