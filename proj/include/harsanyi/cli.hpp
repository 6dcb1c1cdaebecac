#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace harsanyi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the default --out directory.
inline constexpr const char* kOutDirEnv = "HARSANYI_OUT";

/// Runs one command. args[0] is the program name. Returns the exit code:
/// 0 success, 1 verification/metric/data failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace harsanyi::cli
