#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Named law suites for every module, runnable from the CLI: each check
// either passes or reports what failed.  Sizes are capped by `max_size`;
// randomized choices are driven by `seed` (the CLI wires MES_SEED here).

namespace mes {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelfCheckOptions {
  std::size_t max_size = 2;
  std::uint64_t seed = 0;
};

std::vector<CheckResult> run_selfcheck(const SelfCheckOptions& opt);

}  // namespace mes
