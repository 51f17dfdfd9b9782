#pragma once

#include <ostream>

namespace htensor::cli {

// sysexits-style codes
inline constexpr int kOk = 0;
inline constexpr int kInconclusive = 2;
inline constexpr int kUsage = 64;
inline constexpr int kDataError = 65;

/// Runs one command line. Output goes to `out` unless --output names a file.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace htensor::cli
