#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ellipsurf::cli {

/// Replacement points for negative-control testing. Empty members fall back to
/// the library functions.
struct SelftestHooks {
  std::function<double(long, double)> gamma_half_ratio;
};

struct SelftestResult {
  bool passed = true;
  /// Name of the first failing property, empty if all passed.
  std::string first_failure;
  /// One line per property, in a fixed order and free of timings.
  std::vector<std::string> lines;
};

/// Sphere exactness, the sphere/Gaussian moment identity, the L2 sandwich for
/// n <= 20, and the two F_D routes against each other and against laplace.
SelftestResult run_selftest(const SelftestHooks& hooks = {});

}  // namespace ellipsurf::cli
