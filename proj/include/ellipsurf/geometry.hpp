#pragma once

// Closed-form geometry of balls, spheres and axis-aligned ellipsoids.
//
// Index convention: omega_n is the area of the unit sphere S^n and kappa_n the
// volume of the unit ball B^n. The sphere bounding B^n (that is, S^{n-1} in
// E^n) therefore has area omega_{n-1} = n * kappa_n. Every function in the
// library uses this convention.
//
// All gamma, omega and kappa arithmetic is done in log space; linear values
// are exponentiated on demand so that dimensions up to ~10^8 work.

#include <span>

#include "ellipsurf/ellipsoid.hpp"

namespace ellipsurf {

/// ln Gamma(x + h) - ln Gamma(x) for x > 0, x + h > 0, accurate to a few ulp of
/// the result even when x is large (no subtraction of two huge log-gammas).
double log_gamma_ratio(double x, double h);

struct SphereConstants {
  long n = 0;
  double omega = 0.0;      // area of S^n
  double log_omega = 0.0;
  double kappa = 0.0;      // volume of B^n
  double log_kappa = 0.0;
};

SphereConstants sphere_constants(long n);

double log_unit_sphere_area(long n);
double unit_sphere_area(long n);
double log_unit_ball_volume(long n);
double unit_ball_volume(long n);

/// Gamma(n/2) / Gamma((n+d)/2): the factor converting a Gaussian moment of a
/// degree-d homogeneous function into its spherical mean.
double gamma_half_ratio(long n, double d);
double log_gamma_half_ratio(long n, double d);

/// kappa_n * prod a_i. Throws RangeError (with the log value) if the linear
/// value overflows or underflows.
double ellipsoid_volume(const Ellipsoid& e);
double log_ellipsoid_volume(const Ellipsoid& e);

/// (n-1)-volume of the orthogonal projection of `e` along the unit vector `u`:
/// kappa_{n-1} * sqrt(sum u_i^2 q_i^2) * prod a_i. `u` must have unit norm to
/// within 1e-12; it is never renormalised.
double projection_volume(const Ellipsoid& e, std::span<const double> u);

/// Surface area from an isoperimetric ratio estimate: R(E) * V_n(E). The error
/// is scaled by the (exact) volume and the method tag is kept.
Estimate surface_area(const Ellipsoid& e, const Estimate& iso_ratio);

/// Cauchy's projection formula: (n-1) * (omega_{n-1} / omega_{n-2}) * mean_vu,
/// where mean_vu is the spherical mean of the projection volume. Needs n >= 2.
double cauchy_mean_projection(const Ellipsoid& e, double mean_vu);

inline constexpr double kUnitVectorTolerance = 1e-12;

}  // namespace ellipsurf
