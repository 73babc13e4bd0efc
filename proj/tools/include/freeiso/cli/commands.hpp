#pragma once

#include <string>
#include <vector>

namespace freeiso::cli {

inline constexpr int kExitDefinitive = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInconclusive = 2;

struct RunResult {
  int exit_code = kExitDefinitive;
  std::string out;
  std::string err;
};

// Runs one invocation; args excludes the program name. Never throws.
RunResult run(const std::vector<std::string>& args);

}  // namespace freeiso::cli
