#pragma once

// Lauricella's F_D(a; b_1..b_n; c; x_1..x_n) by its multiple power series and by
// its Euler-type integral
//
//   Gamma(c)/(Gamma(a) Gamma(c-a)) int_0^1 u^{a-1} (1-u)^{c-a-1} prod_i (1 - u x_i)^{-b_i} du,
//
// and the isoperimetric ratio of an ellipsoid written as a sum of F_D values.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ellipsurf/ellipsoid.hpp"
#include "ellipsurf/quadrature.hpp"

namespace ellipsurf {

struct FdParams {
  double a = 0.0;
  std::vector<double> b;
  double c = 0.0;
  std::vector<double> x;
};

/// Exponent 1/2 + delta_ij of factor i in the j-th term of the ratio identity.
struct Eta {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.5;
};

Eta make_eta(std::size_t i, std::size_t j) noexcept;

/// b vector (eta_{1j}, ..., eta_{nj}).
std::vector<double> eta_column(std::size_t n, std::size_t j);

/// Multiple power series, summed shell by shell in total degree |m| = 0, 1, ...
///
/// The shell sum  sum_{|m|=M} prod_i (b_i)_{m_i} x_i^{m_i} / m_i!  is the
/// t^M coefficient e_M of prod_i (1 - x_i t)^{-b_i}; it is generated by
/// M e_M = sum_{k=1}^{M} p_k e_{M-k} with power sums p_k = sum_i b_i x_i^k.
/// (a)_M/(c)_M is carried as sign and log magnitude. Summation stops after two
/// consecutive shells below tol * |partial sum|.
///
/// Requires |x_i| < 1 (DomainError otherwise) and c not a non-positive integer.
/// If max_total_degree shells are used up the partial sum is returned with
/// converged = false.
QuadResult fd_series(const FdParams& p, double tol = 1e-14, int max_total_degree = 5000);

/// Euler integral. Requires a > 0, c - a > 0 and x_i < 1 (DomainError). The
/// endpoint factors are absorbed by v = u^a on [0, 1/2] and w = (1-u)^{c-a}
/// on [1/2, 1].
QuadResult fd_integral(const FdParams& p, const QuadConfig& cfg = {});

enum class FdRoute { series, integral };

struct LauricellaConfig {
  QuadConfig quad;
  double series_tol = 1e-14;
  int max_total_degree = 5000;
};

/// R(E) = sqrt(alpha) * sum_j q_j^2 F_D(1/2; eta_{1j}..eta_{nj}; (n+2)/2; 1 - alpha q_1^2, ...).
///
/// alpha must satisfy |1 - alpha q_j^2| < 1; when unset the default
/// 2/(min q^2 + max q^2) is used. The integral route folds the n F_D integrals
/// into one. method = lauricella.
Estimate iso_ratio_lauricella(const Ellipsoid& e, std::optional<double> alpha,
                              FdRoute route = FdRoute::integral,
                              const LauricellaConfig& cfg = {});

/// The ratio identity with the constants as originally printed:
/// n Gamma^2(n/2)/Gamma^2((n+1)/2) sqrt(alpha) sum_j (q_j^2/2) F_D(...; (n+1)/2; ...).
/// Kept for the discrepancy report only; it does not reproduce R = n for the ball.
QuadResult quadform2_as_printed(const Ellipsoid& e, double alpha, const QuadConfig& cfg = {});

}  // namespace ellipsurf
