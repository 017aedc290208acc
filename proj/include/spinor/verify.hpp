#pragma once

// Fast oracle and identity checks bundled with the library, run by
// `spinor verify`. The full criteria live in the acceptance test binary.

#include <string>
#include <vector>

namespace spinor {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

std::vector<CheckResult> run_self_checks();

} // namespace spinor
