#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orchard::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfeasible = 3;

/// Environment variable capping bench parallelism.
inline constexpr const char* kThreadsEnv = "ORCHARD_MTVRP_THREADS";

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orchard::cli
