#include "ellipsurf/geometry.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include "ellipsurf/detail/summation.hpp"
#include "ellipsurf/errors.hpp"

namespace ellipsurf {
namespace {

constexpr double kLogPi = 1.1447298858494001741434273513530587;  // ln(pi)
constexpr double kLogTwo = 0.6931471805599453094172321214581766;
// exp() of anything above this overflows; below the lower bound the result is
// subnormal or zero.
constexpr double kMaxLog = 709.782712893384;
constexpr double kMinLog = -708.3964185322641;

// Stirling correction sum_{k=1}^{8} B_{2k} / (2k (2k-1) z^{2k-1}), z >= 15.
double stirling_tail(double z) {
  static constexpr double kCoef[] = {
      1.0 / 12.0,          -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
  };
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  double acc = 0.0;
  for (int k = 7; k >= 0; --k) acc = acc * inv2 + kCoef[k];
  return acc * inv;
}

void require_index(long n, const char* what) {
  if (n < 0) {
    throw DomainError(std::string(what) + ": dimension index must be >= 0, got " +
                      std::to_string(n));
  }
}

double checked_exp(double log_value, const char* what) {
  if (log_value > kMaxLog) {
    throw RangeError(std::string(what) + " overflows double precision", log_value);
  }
  if (log_value < kMinLog) {
    throw RangeError(std::string(what) + " underflows double precision", log_value);
  }
  return std::exp(log_value);
}

}  // namespace

double log_gamma_ratio(double x, double h) {
  if (!std::isfinite(x) || !std::isfinite(h) || !(x > 0.0) || !(x + h > 0.0)) {
    throw DomainError("log_gamma_ratio: need x > 0 and x + h > 0 (gamma pole), got x=" +
                      std::to_string(x) + ", h=" + std::to_string(h));
  }
  if (h == 0.0) return 0.0;

  // Shift up with Gamma(z + 1) = z Gamma(z) until the asymptotic series is
  // accurate for both arguments.
  constexpr double kShift = 15.0;
  double shifted = 0.0;
  while (std::fmin(x, x + h) < kShift) {
    shifted += std::log1p(h / x);
    x += 1.0;
  }
  const double main = (x - 0.5) * std::log1p(h / x) + h * std::log(x + h) - h;
  return main + (stirling_tail(x + h) - stirling_tail(x)) - shifted;
}

double log_unit_sphere_area(long n) {
  require_index(n, "unit_sphere_area");
  const double half = 0.5 * static_cast<double>(n + 1);
  return kLogTwo + half * kLogPi - std::lgamma(half);
}

double unit_sphere_area(long n) {
  return checked_exp(log_unit_sphere_area(n), "unit sphere area");
}

double log_unit_ball_volume(long n) {
  require_index(n, "unit_ball_volume");
  const double half = 0.5 * static_cast<double>(n);
  return half * kLogPi - std::lgamma(half + 1.0);
}

double unit_ball_volume(long n) {
  return checked_exp(log_unit_ball_volume(n), "unit ball volume");
}

SphereConstants sphere_constants(long n) {
  SphereConstants c;
  c.n = n;
  c.log_omega = log_unit_sphere_area(n);
  c.log_kappa = log_unit_ball_volume(n);
  // Exponentials may legitimately underflow to 0 for huge n; the log fields
  // stay exact in that case.
  c.omega = std::exp(c.log_omega);
  c.kappa = std::exp(c.log_kappa);
  return c;
}

double log_gamma_half_ratio(long n, double d) {
  if (n < 1) {
    throw DomainError("gamma_half_ratio: need n >= 1, got " + std::to_string(n));
  }
  const double x = 0.5 * static_cast<double>(n);
  if (!(x + 0.5 * d > 0.0)) {
    throw DomainError("gamma_half_ratio: n + d must be > 0 (gamma pole), got n=" +
                      std::to_string(n) + ", d=" + std::to_string(d));
  }
  return -log_gamma_ratio(x, 0.5 * d);
}

double gamma_half_ratio(long n, double d) {
  return checked_exp(log_gamma_half_ratio(n, d), "gamma_half_ratio");
}

double log_ellipsoid_volume(const Ellipsoid& e) {
  return log_unit_ball_volume(static_cast<long>(e.dimension())) + e.log_axes_product();
}

double ellipsoid_volume(const Ellipsoid& e) {
  return checked_exp(log_ellipsoid_volume(e), "ellipsoid volume");
}

double projection_volume(const Ellipsoid& e, std::span<const double> u) {
  const std::size_t n = e.dimension();
  if (u.size() != n) {
    throw InputError("projection_volume: direction has " + std::to_string(u.size()) +
                     " components, ellipsoid has dimension " + std::to_string(n));
  }
  const auto q = e.inverse_axes();
  detail::CompensatedSum norm2;
  detail::CompensatedSum weighted;
  for (std::size_t i = 0; i < n; ++i) {
    norm2.add(u[i] * u[i]);
    weighted.add(u[i] * u[i] * q[i] * q[i]);
  }
  const double norm = std::sqrt(norm2.value());
  if (!(std::fabs(norm - 1.0) <= kUnitVectorTolerance)) {
    throw InputError("projection_volume: direction is not a unit vector (norm " +
                     std::to_string(norm) + ")");
  }
  const double log_value = log_unit_ball_volume(static_cast<long>(n) - 1) +
                           e.log_axes_product() + 0.5 * std::log(weighted.value());
  return checked_exp(log_value, "projection volume");
}

Estimate surface_area(const Ellipsoid& e, const Estimate& iso_ratio) {
  if (!(iso_ratio.value > 0.0)) {
    throw InputError("surface_area: isoperimetric ratio must be positive");
  }
  const double volume = ellipsoid_volume(e);
  Estimate out = iso_ratio;
  out.value = iso_ratio.value * volume;
  out.abs_error = iso_ratio.abs_error * volume;
  return out;
}

double cauchy_mean_projection(const Ellipsoid& e, double mean_vu) {
  const long n = static_cast<long>(e.dimension());
  if (n < 2) {
    throw DomainError("cauchy_mean_projection: needs n >= 2 (omega_{n-2} undefined)");
  }
  if (!(mean_vu > 0.0) || !std::isfinite(mean_vu)) {
    throw InputError("cauchy_mean_projection: mean projection volume must be positive");
  }
  // omega_{n-1} / omega_{n-2} = sqrt(pi) * Gamma((n-1)/2) / Gamma(n/2)
  const double ratio = std::sqrt(std::numbers::pi) * gamma_half_ratio(n - 1, 1.0);
  return static_cast<double>(n - 1) * ratio * mean_vu;
}

}  // namespace ellipsurf
