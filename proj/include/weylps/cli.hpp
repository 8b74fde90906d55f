#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace weylps {

/// JSON schema tag written into every report.
inline constexpr const char* kSchemaVersion = "weylps-1";

/// Settings shared by the subcommands. Rationals are kept as the strings the
/// user typed; they are parsed exactly when the command runs.
struct RunConfig {
  int l = 4;
  std::string alpha;  // "a0,a1,..."; empty means seeded random
  std::uint64_t seed = 1;
  int samples = 10;
  double rtol = 0.0;  // 0 picks the environment default
  double atol = 0.0;
  std::string format = "json";
  std::string out;  // empty writes to stdout
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Reports go to
/// `out` (or --out), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weylps
