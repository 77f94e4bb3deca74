#pragma once

#include <string>
#include <vector>

namespace fluxsize {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // expected / actual / tolerance
};

struct VerifyConfig {
  std::string devices_dir;       // empty: bundled default
  int impurity_base_resolution = 1000;
  double impurity_window_delta = 20.0;
  std::uint64_t seed = 20260809;
  bool quick = false;            // trims Monte Carlo counts for smoke runs
};

// Runs the full verification suite: closed-form gap check, kernel
// quadratures, Green's-function occupation cross-check, impurity
// cancellation, discrimination-oracle properties, basis optimality, device
// golden values, tunneling magnitude, and the per-mode bound sweep.
std::vector<CheckResult> run_verification(const VerifyConfig& config);

} // namespace fluxsize
