#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bsmooth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitUnknownEntity = 3;
inline constexpr int kExitConfig = 4;

/// Runs the `bsmooth` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bsmooth::cli
