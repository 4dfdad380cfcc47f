#pragma once

// Deterministic evaluation of E[sqrt(sum_i q_i^2 X_i^2)], X_i independent with
// density exp(-x^2)/sqrt(pi) (mean 0, variance 1/2), and of the isoperimetric
// ratio R(E) = n * Gamma(n/2)/Gamma((n+1)/2) * E[...] built from it.

#include <span>
#include <string>

#include "ellipsurf/ellipsoid.hpp"
#include "ellipsurf/quadrature.hpp"

namespace ellipsurf {

/// E[sqrt(Y)], Y = sum q_i^2 X_i^2, from the Laplace-transform identity
///
///   E[sqrt(Y)] = 1/(2 sqrt(pi)) * int_0^inf t^{-3/2} (1 - prod_j (1 + q_j^2 t)^{-1/2}) dt.
///
/// q is scaled to unit 2-norm, then t = w^2 and w = s/(1-s) map the integral
/// onto [0,1] with a bounded, analytic integrand. The product is evaluated as
/// exp(-1/2 sum log1p(q_j^2 t)), so n in the millions is fine.
QuadResult sqrt_qform_moment(std::span<const double> q, const QuadConfig& cfg = {});

/// R(E) by the quadrature above. method = laplace.
Estimate iso_ratio_quad(const Ellipsoid& e, const QuadConfig& cfg = {});

/// 2 / (min q_j^2 + max q_j^2): centres the values 1 - alpha q_j^2 around 0.
double default_alpha(std::span<const double> q);

/// |1 - alpha q_j^2| < 1 for every j.
bool is_admissible_alpha(std::span<const double> q, double alpha);

/// Throws InputError naming the first j that violates admissibility.
void require_admissible_alpha(std::span<const double> q, double alpha);

/// The alpha form of the quadratic-form moment, normalised to estimate E[sqrt(Y)]:
///
///   sqrt(alpha)/sqrt(pi) * int_0^inf z^{-1/2} sum_j q_j^2 / (2 (1 + alpha z q_j^2))
///                          * prod_k (1 + alpha q_k^2 z)^{-1/2} dz.
///
/// This is the integration-by-parts form of the identity used by
/// sqrt_qform_moment with t = alpha z, so the value does not depend on alpha.
QuadResult quadform1_corrected(std::span<const double> q, double alpha, const QuadConfig& cfg = {});

struct AsPrintedResult {
  QuadResult quad;
  /// The integrand is real only on [0, real_limit), real_limit = 1/max q_j^2.
  double real_limit = 0.0;
  /// Number of q_j equal to max q_j. A multiplicity >= 2 makes the integral
  /// diverge at real_limit.
  int pole_multiplicity = 0;
  bool divergent = false;
  std::string note;
};

/// The same moment with the product term read literally as
/// prod_k (1 - q_k^2 z)^{-1/2}, integrated over the real part of the axis.
/// Kept for the discrepancy report; it does not estimate E[sqrt(Y)].
AsPrintedResult quadform1_as_printed(std::span<const double> q, double alpha,
                                     const QuadConfig& cfg = {});

}  // namespace ellipsurf
