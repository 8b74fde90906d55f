#pragma once

#include <string>
#include <vector>

namespace weylps {

/// Outcome of a sampled verification.
struct CheckReport {
  int samples = 0;
  int checks = 0;
  int skipped = 0;
  std::vector<std::string> violations;
  [[nodiscard]] bool ok() const { return violations.empty() && checks > 0; }
};

}  // namespace weylps
