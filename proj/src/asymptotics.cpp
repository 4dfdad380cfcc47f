#include "ellipsurf/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ellipsurf/detail/summation.hpp"
#include "ellipsurf/errors.hpp"
#include "ellipsurf/geometry.hpp"

namespace ellipsurf {

LovarDiagnostic lovar_diagnostic(std::span<const double> q) {
  const double mx = q.empty() ? 0.0
                              : std::fabs(*std::max_element(q.begin(), q.end(), [](double a, double b) {
                                  return std::fabs(a) < std::fabs(b);
                                }));
  if (!(mx > 0.0) || !std::isfinite(mx)) {
    throw InputError("lovar_diagnostic: q must be nonzero and finite");
  }
  // Scaled sums keep q^4 in range; the ratio is scale-free.
  detail::CompensatedSum s2;
  detail::CompensatedSum s4;
  for (double v : q) {
    const double r2 = (v / mx) * (v / mx);
    s2.add(r2);
    s4.add(r2 * r2);
  }
  LovarDiagnostic d;
  d.ratio = s4.value() / (s2.value() * s2.value());
  d.sum_q2 = s2.value() * mx * mx;
  d.sum_q4 = s4.value() * (mx * mx) * (mx * mx);
  return d;
}

Estimate iso_ratio_asymptotic(const Ellipsoid& e) {
  const long n = static_cast<long>(e.dimension());
  const double root_half_sum = lp_norm(e.inverse_axes(), 2.0) * std::numbers::sqrt2 * 0.5;
  Estimate out;
  out.value = static_cast<double>(n) * gamma_half_ratio(n, 1.0) * root_half_sum;
  out.abs_error = 0.0;
  out.method = Method::asymptotic;
  out.evals = 1;
  return out;
}

double mean_lp_norm_asymptotic(long n, double p) {
  if (n < 1) throw InputError("mean_lp_norm_asymptotic: n must be >= 1");
  if (!(p > 0.0) || !std::isfinite(p)) throw InputError("mean_lp_norm_asymptotic: p must be > 0");
  const double log_inner = std::log(static_cast<double>(n)) + std::lgamma(0.5 * (p + 1.0)) -
                           0.5 * std::log(std::numbers::pi);
  return gamma_half_ratio(n, 1.0) * std::exp(log_inner / p);
}

BoundsReport bounds_l2(const Ellipsoid& e) {
  BoundsReport r;
  r.n = static_cast<long>(e.dimension());
  const double g = gamma_half_ratio(r.n, 1.0);
  r.lower_const = g / std::sqrt(std::numbers::pi);
  r.upper_const = 1.5 * g;
  r.l2_norm = lp_norm(e.inverse_axes(), 2.0);
  r.ratio_lower = r.lower_const * r.l2_norm;
  r.ratio_upper = r.upper_const * r.l2_norm;
  const double log_nv = std::log(static_cast<double>(r.n)) + log_ellipsoid_volume(e);
  r.log_area_lower = log_nv + std::log(r.ratio_lower);
  r.log_area_upper = log_nv + std::log(r.ratio_upper);
  const double nv = static_cast<double>(r.n) * ellipsoid_volume(e);
  r.area_lower = nv * r.ratio_lower;
  r.area_upper = nv * r.ratio_upper;
  if (!std::isfinite(r.area_upper) || !(r.area_lower > 0.0)) {
    throw RangeError("bounds_l2: surface-area interval not representable", r.log_area_upper);
  }
  return r;
}

double lp_norm(std::span<const double> q, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw InputError("lp_norm: p must be > 0");
  double mx = 0.0;
  for (double v : q) mx = std::max(mx, std::fabs(v));
  if (mx == 0.0) return 0.0;
  detail::CompensatedSum acc;
  for (double v : q) acc.add(p == 2.0 ? (v / mx) * (v / mx) : std::pow(std::fabs(v) / mx, p));
  return mx * (p == 2.0 ? std::sqrt(acc.value()) : std::pow(acc.value(), 1.0 / p));
}

double elementary_symmetric(std::span<const double> values, std::size_t k) {
  const std::size_t n = values.size();
  if (k > n) {
    throw InputError("elementary_symmetric: k = " + std::to_string(k) + " exceeds n = " +
                     std::to_string(n));
  }
  std::vector<double> sigma(k + 1, 0.0);
  sigma[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t top = std::min(k, i + 1);
    for (std::size_t j = top; j >= 1; --j) sigma[j] += values[i] * sigma[j - 1];
  }
  return sigma[k];
}

double gamma_ratio_asymptotic_check(double x, double y) {
  if (!(x > 0.0) || !(x + y > 0.0)) {
    throw DomainError("gamma_ratio_asymptotic_check: need x > 0 and x + y > 0");
  }
  return std::exp(log_gamma_ratio(x, y) - y * std::log(x + y));
}

}  // namespace ellipsurf
