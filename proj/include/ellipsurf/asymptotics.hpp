#pragma once

// Large-n approximations, the two-sided L2 bounds on the isoperimetric ratio,
// and the norm identities that relate |q|_p to the semi-axes.

#include <span>

#include "ellipsurf/ellipsoid.hpp"

namespace ellipsurf {

/// sum q^4 / (sum q^2)^2. Lies in [1/n, 1]; it must tend to 0 for the
/// large-n formula to apply.
struct LovarDiagnostic {
  double sum_q2 = 0.0;
  double sum_q4 = 0.0;
  double ratio = 0.0;
};

LovarDiagnostic lovar_diagnostic(std::span<const double> q);

/// n * Gamma(n/2)/Gamma((n+1)/2) * sqrt(sum q_i^2 / 2). abs_error is 0: the
/// formula is only known to be asymptotically exact, with no rate. Pair it
/// with lovar_diagnostic.
Estimate iso_ratio_asymptotic(const Ellipsoid& e);

/// Gamma(n/2)/Gamma((n+1)/2) * (n Gamma((p+1)/2) / sqrt(pi))^{1/p}, the
/// large-n spherical mean of |u|_p.
double mean_lp_norm_asymptotic(long n, double p);

/// Sandwich for |q|_R = R(E)/n against |q|_2:
///   Gamma(n/2)/(sqrt(pi) Gamma((n+1)/2)) |q|_2 <= |q|_R <= 3 Gamma(n/2)/(2 Gamma((n+1)/2)) |q|_2
/// and the surface-area interval n V |q|_R it induces.
struct BoundsReport {
  long n = 0;
  double lower_const = 0.0;
  double upper_const = 0.0;
  double l2_norm = 0.0;
  double ratio_lower = 0.0;
  double ratio_upper = 0.0;
  double area_lower = 0.0;
  double area_upper = 0.0;
  double log_area_lower = 0.0;
  double log_area_upper = 0.0;
};

/// Throws RangeError if the induced area interval is not representable.
BoundsReport bounds_l2(const Ellipsoid& e);

/// (sum |q_i|^p)^{1/p}, scaled by max |q_i| against overflow.
double lp_norm(std::span<const double> q, double p);

/// k-th elementary symmetric polynomial of `values` (sigma_0 = 1), by the
/// one-pass recurrence sigma_k <- sigma_k + v * sigma_{k-1}.
double elementary_symmetric(std::span<const double> values, std::size_t k);

/// Gamma(x+y) / (Gamma(x) (x+y)^y); tends to 1 as x grows.
double gamma_ratio_asymptotic_check(double x, double y);

}  // namespace ellipsurf
