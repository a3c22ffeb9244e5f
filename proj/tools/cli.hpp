#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace faceart::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitNoThreshold = 2;
inline constexpr int kExitParseError = 3;
inline constexpr int kExitNetworkError = 4;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace faceart::cli
