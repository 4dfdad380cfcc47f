#include "ellipsurf/laplace_quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "ellipsurf/errors.hpp"
#include "ellipsurf/geometry.hpp"
#include "ellipsurf/simd/kernels.hpp"

namespace ellipsurf {
namespace {

const double kInvSqrtPi = std::numbers::inv_sqrtpi;

// Beyond this w the product prod (1 + c w^2)^{-1/2} is below 1e-150 for any
// normalised c, and squaring w would approach overflow.
constexpr double kWMax = 1e150;

void require_inverse_axes(std::span<const double> q, const char* who) {
  if (q.empty()) throw InputError(std::string(who) + ": need at least one inverse axis");
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(q[i] > 0.0) || !std::isfinite(q[i])) {
      throw InputError(std::string(who) + ": inverse axis " + std::to_string(i + 1) +
                       " must be positive and finite");
    }
  }
}

double scaled_l2(std::span<const double> q) {
  const double mx = *std::max_element(q.begin(), q.end());
  double acc = 0.0;
  for (double v : q) acc += (v / mx) * (v / mx);
  return mx * std::sqrt(acc);
}

}  // namespace

QuadResult sqrt_qform_moment(std::span<const double> q, const QuadConfig& cfg) {
  require_inverse_axes(q, "sqrt_qform_moment");
  cfg.validate();
  const double scale = scaled_l2(q);
  std::vector<double> c(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) c[i] = (q[i] / scale) * (q[i] / scale);

  const auto integrand = [&c](double s) {
    const double w = s / (1.0 - s);
    if (w > kWMax) return 1.0 / (s * s);
    const double log_sum = simd::sum_log1p(c, w * w);
    return -std::expm1(-0.5 * log_sum) / (s * s);
  };
  QuadResult r = integrate(integrand, 0.0, 1.0, cfg);
  r.value *= scale * kInvSqrtPi;
  r.est_error *= scale * kInvSqrtPi;
  return r;
}

Estimate iso_ratio_quad(const Ellipsoid& e, const QuadConfig& cfg) {
  const long n = static_cast<long>(e.dimension());
  const QuadResult m = sqrt_qform_moment(e.inverse_axes(), cfg);
  const double factor = static_cast<double>(n) * gamma_half_ratio(n, 1.0);
  Estimate out;
  out.value = factor * m.value;
  out.abs_error = factor * m.est_error;
  out.method = Method::laplace;
  out.evals = m.evals;
  out.converged = m.converged;
  return out;
}

double default_alpha(std::span<const double> q) {
  require_inverse_axes(q, "default_alpha");
  const auto [mn, mx] = std::minmax_element(q.begin(), q.end());
  return 2.0 / ((*mn) * (*mn) + (*mx) * (*mx));
}

bool is_admissible_alpha(std::span<const double> q, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) return false;
  return std::all_of(q.begin(), q.end(),
                     [alpha](double v) { return std::fabs(1.0 - alpha * v * v) < 1.0; });
}

void require_admissible_alpha(std::span<const double> q, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InputError("alpha must be positive and finite, got " + std::to_string(alpha));
  }
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double x = 1.0 - alpha * q[j] * q[j];
    if (!(std::fabs(x) < 1.0)) {
      throw InputError("alpha=" + std::to_string(alpha) + " is inadmissible: |1 - alpha q_" +
                       std::to_string(j + 1) + "^2| = " + std::to_string(std::fabs(x)) +
                       " >= 1");
    }
  }
}

QuadResult quadform1_corrected(std::span<const double> q, double alpha, const QuadConfig& cfg) {
  require_inverse_axes(q, "quadform1_corrected");
  require_admissible_alpha(q, alpha);
  cfg.validate();
  std::vector<double> q2(q.size());
  std::vector<double> aq2(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    q2[i] = q[i] * q[i];
    aq2[i] = alpha * q2[i];
  }
  // z = w^2 removes z^{-1/2}; w = kappa s/(1-s) puts the bulk near s = 1/2.
  const double kappa = 1.0 / (std::sqrt(alpha) * scaled_l2(q));
  const auto integrand = [&](double s) {
    const double w = kappa * s / (1.0 - s);
    if (w > kWMax) return 0.0;
    const double t = w * w;
    const double weights = simd::dot_reciprocal(q2, aq2, t);
    const double product = std::exp(-0.5 * simd::sum_log1p(aq2, t));
    return weights * product * kappa / ((1.0 - s) * (1.0 - s));
  };
  QuadResult r = integrate(integrand, 0.0, 1.0, cfg);
  const double prefactor = std::sqrt(alpha) * kInvSqrtPi;
  r.value *= prefactor;
  r.est_error *= prefactor;
  return r;
}

AsPrintedResult quadform1_as_printed(std::span<const double> q, double alpha,
                                     const QuadConfig& cfg) {
  require_inverse_axes(q, "quadform1_as_printed");
  require_admissible_alpha(q, alpha);
  cfg.validate();
  const std::size_t n = q.size();
  std::vector<double> q2(n);
  for (std::size_t i = 0; i < n; ++i) q2[i] = q[i] * q[i];
  const double q2max = *std::max_element(q2.begin(), q2.end());

  AsPrintedResult out;
  out.real_limit = 1.0 / q2max;
  out.pole_multiplicity =
      static_cast<int>(std::count(q2.begin(), q2.end(), q2max));
  if (out.pole_multiplicity >= 2) {
    out.divergent = true;
    out.quad.value = std::numeric_limits<double>::infinity();
    out.quad.est_error = std::numeric_limits<double>::infinity();
    out.quad.converged = false;
    out.note = "prod (1 - q_j^2 z)^{-1/2} has a pole of order " +
               std::to_string(out.pole_multiplicity) + "/2 at z = 1/max q^2; integral diverges";
    return out;
  }

  const double zstar = out.real_limit;
  const double sqrt_zstar = std::sqrt(zstar);
  const auto weight_sum = [&](double z) {
    double acc = 0.0;
    for (double v : q2) acc += v / (2.0 * (1.0 + alpha * z * v));
    return acc;
  };
  // z = zstar * s^2 on the lower half of [0, zstar).
  const auto lower = [&](double s) {
    const double z = zstar * s * s;
    double log_prod = 0.0;
    for (double v : q2) log_prod += std::log1p(-v * z);
    return 2.0 * sqrt_zstar * weight_sum(z) * std::exp(-0.5 * log_prod);
  };
  // z = zstar * (1 - r^2) on the upper half; the factor of the largest q_j is
  // (r^2)^{-1/2} and cancels the Jacobian 2r.
  const auto upper = [&](double r) {
    const double z = zstar * (1.0 - r * r);
    double log_prod = 0.0;
    bool skipped_max = false;
    for (double v : q2) {
      if (v == q2max && !skipped_max) {
        skipped_max = true;
        continue;
      }
      const double rho = v / q2max;
      log_prod += std::log((q2max - v) / q2max + rho * r * r);
    }
    return 2.0 * zstar / std::sqrt(z) * weight_sum(z) * std::exp(-0.5 * log_prod);
  };
  const double split = std::sqrt(0.5);
  const QuadPanel panels[] = {{lower, 0.0, split}, {upper, 0.0, split}};
  out.quad = integrate(panels, cfg);
  const double prefactor = std::sqrt(alpha) * kInvSqrtPi;
  out.quad.value *= prefactor;
  out.quad.est_error *= prefactor;
  out.note = "integrand is real only on [0, 1/max q^2); integrated there";
  return out;
}

}  // namespace ellipsurf
