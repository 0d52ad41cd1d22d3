#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace roughmild {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runtime property suites behind the `verify` command. Each suite re-checks
// the module's structural guarantees on seeded random instances; they are
// lighter than the compiled test suites but cover the same invariants.
std::vector<CheckResult> verify_spectral(std::uint64_t seed);
std::vector<CheckResult> verify_paths(std::uint64_t seed);
std::vector<CheckResult> verify_young(std::uint64_t seed);
std::vector<CheckResult> verify_convolve(std::uint64_t seed);
std::vector<CheckResult> verify_mild(std::uint64_t seed);
// fixture: "default" or "broken-f" (deliberately under-smoothed noise,
// expected to fail the audit)
std::vector<CheckResult> verify_models(std::uint64_t seed, const std::string& fixture);

}  // namespace roughmild
