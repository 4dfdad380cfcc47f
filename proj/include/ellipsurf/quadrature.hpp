#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

namespace ellipsurf {

struct QuadConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  int max_subdivisions = 200;
  /// Free parameter of the Lauricella / quadform1 representations. When unset
  /// the module picks 2 / (min q^2 + max q^2).
  std::optional<double> alpha;

  /// Throws InputError unless rel_tol >= 1e-15, abs_tol >= 0 and
  /// max_subdivisions >= 10.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double est_error = 0.0;
  std::int64_t evals = 0;
  bool converged = false;
};

/// One piece of an integral: `f` integrated over [a, b].
struct QuadPanel {
  std::function<double(double)> f;
  double a = 0.0;
  double b = 0.0;
};

/// Globally adaptive Gauss-Kronrod (10/21) integration over a set of panels.
///
/// The interval with the largest |K21 - G10| is bisected until the summed
/// error is <= max(abs_tol, rel_tol * |value|) or max_subdivisions bisections
/// have been spent. Refinement order and the final sum are deterministic.
QuadResult integrate(std::span<const QuadPanel> panels, const QuadConfig& cfg);

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadConfig& cfg);

}  // namespace ellipsurf
