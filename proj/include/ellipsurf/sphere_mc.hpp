#pragma once

// Monte Carlo means over the unit sphere S^{n-1} and over the Gaussian with
// density exp(-x^2)/sqrt(pi) per coordinate (mean 0, variance 1/2), and the
// homogeneous-function bridge between them:
//
//   mean_{S^{n-1}} f = Gamma(n/2)/Gamma((n+d)/2) * E[f(X_1, ..., X_n)]
//
// for f homogeneous of degree d.
//
// Samples are split into fixed chunks of cfg.chunk_size; chunk k draws from
// RngStream(seed, domain | k) and chunk statistics are merged pairwise in
// chunk order. Results therefore depend on (samples, seed, chunk_size) only,
// not on the number of worker threads (ELLIPSURF_THREADS, 0 = all cores).

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ellipsurf/ellipsoid.hpp"
#include "ellipsurf/rng.hpp"

namespace ellipsurf {

struct McConfig {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 0x5EEDull;
  std::int64_t chunk_size = 1 << 16;
  /// Debug aid: spot-check homogeneity of the integrand before sampling.
  bool check_homogeneity = false;

  /// Throws InputError unless samples >= 2 and chunk_size >= 1.
  void validate() const;
};

struct HomogeneousFn {
  double degree = 0.0;
  std::function<double(std::span<const double>)> eval;
};

/// Evaluates f at 8 random points x and checks f(lambda x) = lambda^d f(x) to
/// relative 1e-10 for lambda in {0.5, 2}. Throws InputError on failure.
void validate_homogeneity(const HomogeneousFn& f, std::size_t n, std::uint64_t seed = 1);

/// Writes a uniform point of S^{n-1} into `out` (x / |x| for standard normal x;
/// the measure-zero x = 0 is redrawn).
void sample_sphere(std::span<double> out, RngStream& rng);
std::vector<double> sample_sphere(std::size_t n, RngStream& rng);

/// Sample mean of f over the sphere; abs_error is the standard error.
Estimate sphere_mean_mc(const HomogeneousFn& f, std::size_t n, const McConfig& cfg);

/// Sample mean of f(X) with X_i ~ exp(-x^2)/sqrt(pi).
Estimate gaussian_mean_mc(const HomogeneousFn& f, std::size_t n, const McConfig& cfg);

/// Spherical mean via the Gaussian moment: gamma_half_ratio(n, d) * E[f(X)].
Estimate sphere_mean_via_gaussian(const HomogeneousFn& f, std::size_t n, const McConfig& cfg);

enum class McRoute { direct_sphere, gaussian_transform };

/// R(E) = n * mean_{S^{n-1}} sqrt(sum q_i^2 u_i^2). direct_sphere reports
/// method mc, gaussian_transform reports gauss.
Estimate iso_ratio_mc(const Ellipsoid& e, const McConfig& cfg,
                      McRoute route = McRoute::direct_sphere);

/// mean_{S^{n-1}} |u|_p, via sphere_mean_via_gaussian.
Estimate mean_lp_norm_mc(std::size_t n, double p, const McConfig& cfg);

/// Worker count from ELLIPSURF_THREADS (unset or 0: hardware concurrency).
unsigned mc_worker_count();

}  // namespace ellipsurf
