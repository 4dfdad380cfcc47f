#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ellipsurf {

/// Axis-aligned ellipsoid { x : sum_i q_i^2 x_i^2 <= 1 } with semi-axes a_i = 1/q_i.
///
/// Construction rejects degenerate input (a_i <= 0, non-finite, or whose
/// inverse is not finite and positive). The inverse axes are computed once,
/// so repeated calls to inverse_axes() return the same bits.
class Ellipsoid {
 public:
  explicit Ellipsoid(std::vector<double> axes);

  /// Builds the ellipsoid from inverse semi-axes q_i.
  static Ellipsoid from_inverse_axes(std::span<const double> q);

  /// Ball of the given radius in `n` dimensions.
  static Ellipsoid ball(std::size_t n, double radius = 1.0);

  std::size_t dimension() const noexcept { return axes_.size(); }
  std::span<const double> axes() const noexcept { return axes_; }
  std::span<const double> inverse_axes() const noexcept { return inverse_; }

  /// sum_i log a_i, accumulated with compensation.
  double log_axes_product() const noexcept { return log_axes_product_; }

 private:
  Ellipsoid(std::vector<double> axes, std::vector<double> inverse);

  std::vector<double> axes_;
  std::vector<double> inverse_;
  double log_axes_product_ = 0.0;
};

enum class Method { mc, gauss, laplace, lauricella, asymptotic, closed_form };

std::string_view to_string(Method m) noexcept;
std::optional<Method> method_from_string(std::string_view s) noexcept;

/// True for the sampling-based methods, whose Estimates carry a seed.
constexpr bool is_stochastic(Method m) noexcept {
  return m == Method::mc || m == Method::gauss;
}

/// A computed scalar with provenance.
///
/// abs_error is a 1-sigma standard error for stochastic methods, a quadrature
/// or truncation estimate for deterministic ones, and 0 for closed forms and
/// asymptotic formulas (which claim no rate).
struct Estimate {
  double value = 0.0;
  double abs_error = 0.0;
  Method method = Method::closed_form;
  std::int64_t evals = 1;
  std::optional<std::uint64_t> seed;
  bool converged = true;
};

}  // namespace ellipsurf
