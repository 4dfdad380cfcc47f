#include "ellipsurf/lauricella.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ellipsurf/detail/summation.hpp"
#include "ellipsurf/errors.hpp"
#include "ellipsurf/geometry.hpp"
#include "ellipsurf/laplace_quad.hpp"
#include "ellipsurf/simd/kernels.hpp"

namespace ellipsurf {
namespace {

void require_same_size(const FdParams& p) {
  if (p.b.size() != p.x.size()) {
    throw InputError("FdParams: b has " + std::to_string(p.b.size()) + " entries but x has " +
                     std::to_string(p.x.size()));
  }
}

// Gamma(c) / (Gamma(a) Gamma(c-a)) for a > 0, c - a > 0.
double euler_normalisation(double a, double c) {
  return std::exp(log_gamma_ratio(c - a, a) - std::lgamma(a));
}

// N * int_0^1 u^{a-1} (1-u)^{beta-1} prod_i (1 - u x_i)^{-b_i} * extra(u) du,
// where extra(u) = sum_j r_j / (1 - u x_j) when r is non-empty and 1 otherwise.
// one_minus_x is passed separately so callers holding 1 - x_i exactly (the
// ellipsoid case, where it is alpha q_i^2) do not lose it to cancellation.
QuadResult euler_integral(double a, double c, std::span<const double> b,
                          std::span<const double> x, std::span<const double> one_minus_x,
                          std::span<const double> r, const QuadConfig& cfg) {
  const double beta = c - a;
  const std::size_t n = x.size();

  std::vector<double> c_low(n);
  std::vector<double> c_up(n);
  std::vector<double> r_up(r.size());
  detail::CompensatedSum log_base;
  for (std::size_t i = 0; i < n; ++i) {
    c_low[i] = -x[i];
    c_up[i] = x[i] / one_minus_x[i];
    log_base.add(b[i] * std::log(one_minus_x[i]));
  }
  for (std::size_t j = 0; j < r.size(); ++j) r_up[j] = r[j] / one_minus_x[j];
  const double log_upper_base = log_base.value();
  const bool has_extra = !r.empty();

  // u = v^{1/a}: u^{a-1} du = dv / a.
  const auto lower = [&](double v) {
    const double u = std::pow(v, 1.0 / a);
    double log_f = (beta - 1.0) * std::log1p(-u) - simd::dot_log1p(b, c_low, u);
    double value = std::exp(log_f) / a;
    if (has_extra) value *= simd::dot_reciprocal(r, c_low, u);
    return value;
  };
  // 1 - u = w^{1/beta}: (1-u)^{beta-1} du = -dw / beta, and
  // 1 - u x_i = (1 - x_i)(1 + s x_i / (1 - x_i)) with s = 1 - u.
  const auto upper = [&](double w) {
    const double s = std::pow(w, 1.0 / beta);
    double log_f = (a - 1.0) * std::log1p(-s) - log_upper_base - simd::dot_log1p(b, c_up, s);
    double value = std::exp(log_f) / beta;
    if (has_extra) value *= simd::dot_reciprocal(r_up, c_up, s);
    return value;
  };
  const QuadPanel panels[] = {{lower, 0.0, std::pow(0.5, a)}, {upper, 0.0, std::pow(0.5, beta)}};
  QuadResult res = integrate(panels, cfg);
  const double norm = euler_normalisation(a, c);
  res.value *= norm;
  res.est_error *= norm;
  return res;
}

void require_integral_domain(const FdParams& p) {
  require_same_size(p);
  if (!(p.a > 0.0) || !(p.c - p.a > 0.0) || !std::isfinite(p.a) || !std::isfinite(p.c)) {
    throw DomainError("fd_integral: need a > 0 and c - a > 0, got a=" + std::to_string(p.a) +
                      ", c=" + std::to_string(p.c));
  }
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    if (!(p.x[i] < 1.0) || !std::isfinite(p.x[i])) {
      throw DomainError("fd_integral: x_" + std::to_string(i + 1) + " = " +
                        std::to_string(p.x[i]) + " puts a pole on [0,1]");
    }
    if (!std::isfinite(p.b[i])) throw InputError("fd_integral: b must be finite");
  }
}

struct RatioSetup {
  double alpha = 0.0;
  std::vector<double> x;
  std::vector<double> one_minus_x;
  std::vector<double> q2;
};

RatioSetup ratio_setup(const Ellipsoid& e, std::optional<double> alpha) {
  const auto q = e.inverse_axes();
  RatioSetup s;
  s.alpha = alpha ? *alpha : default_alpha(q);
  require_admissible_alpha(q, s.alpha);
  for (double v : q) {
    s.q2.push_back(v * v);
    s.one_minus_x.push_back(s.alpha * v * v);
    s.x.push_back(1.0 - s.alpha * v * v);
  }
  return s;
}

}  // namespace

Eta make_eta(std::size_t i, std::size_t j) noexcept {
  return Eta{i, j, i == j ? 1.5 : 0.5};
}

std::vector<double> eta_column(std::size_t n, std::size_t j) {
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = make_eta(i, j).value;
  return b;
}

QuadResult fd_series(const FdParams& p, double tol, int max_total_degree) {
  require_same_size(p);
  if (!(tol > 0.0)) throw InputError("fd_series: tol must be positive");
  if (max_total_degree < 1) throw InputError("fd_series: max_total_degree must be >= 1");
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    if (!(std::fabs(p.x[i]) < 1.0)) {
      throw DomainError("fd_series: |x_" + std::to_string(i + 1) + "| = " +
                        std::to_string(std::fabs(p.x[i])) + " >= 1, series diverges");
    }
  }
  if (p.c <= 0.0 && p.c == std::floor(p.c)) {
    throw DomainError("fd_series: c must not be a non-positive integer");
  }

  const std::size_t n = p.x.size();
  std::vector<double> powers(p.x);      // x_i^k for the current k
  std::vector<double> power_sums{0.0};  // p_k, index 0 unused
  std::vector<double> shells{1.0};      // e_M
  detail::CompensatedSum sum;
  sum.add(1.0);

  double log_ratio = 0.0;  // log |(a)_M / (c)_M|
  int sign = 1;
  int quiet_shells = 0;
  double last = 0.0;
  double previous = 0.0;
  double tail = 0.0;
  QuadResult out;
  out.evals = 1;

  for (int m = 1; m <= max_total_degree; ++m) {
    double pk = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      pk += p.b[i] * powers[i];
      powers[i] *= p.x[i];
    }
    power_sums.push_back(pk);
    double em = 0.0;
    for (int k = 1; k <= m; ++k) em += power_sums[k] * shells[m - k];
    em /= m;
    shells.push_back(em);

    const double num = p.a + (m - 1);
    const double den = p.c + (m - 1);
    out.evals = m + 1;
    if (num == 0.0) {
      // (a)_M vanishes from here on: the series terminates.
      out.converged = true;
      last = previous = tail = 0.0;
      break;
    }
    if ((num < 0.0) != (den < 0.0)) sign = -sign;
    log_ratio += std::log(std::fabs(num)) - std::log(std::fabs(den));

    const double term = sign * std::exp(log_ratio) * em;
    if (!std::isfinite(term)) break;
    sum.add(term);
    previous = last;
    last = term;

    // Geometric tail |t| r/(1-r) from the ratio of successive shells.
    const double r = previous != 0.0 ? std::fabs(term / previous) : 0.0;
    tail = r < 1.0 ? std::fabs(term) * r / (1.0 - r) : std::numeric_limits<double>::infinity();
    const double scale = tol * std::fabs(sum.value());
    quiet_shells = std::fabs(term) <= scale && tail <= scale ? quiet_shells + 1 : 0;
    if (quiet_shells >= 2) {
      out.converged = true;
      break;
    }
  }
  out.value = sum.value();
  out.est_error = std::fabs(last) + std::fabs(previous) + (std::isfinite(tail) ? tail : 0.0);
  return out;
}

QuadResult fd_integral(const FdParams& p, const QuadConfig& cfg) {
  require_integral_domain(p);
  std::vector<double> one_minus_x(p.x.size());
  for (std::size_t i = 0; i < p.x.size(); ++i) one_minus_x[i] = 1.0 - p.x[i];
  return euler_integral(p.a, p.c, p.b, p.x, one_minus_x, {}, cfg);
}

Estimate iso_ratio_lauricella(const Ellipsoid& e, std::optional<double> alpha, FdRoute route,
                              const LauricellaConfig& cfg) {
  const std::size_t n = e.dimension();
  const RatioSetup s = ratio_setup(e, alpha);
  const double c = 0.5 * static_cast<double>(n) + 1.0;
  const double root_alpha = std::sqrt(s.alpha);

  Estimate out;
  out.method = Method::lauricella;
  if (route == FdRoute::integral) {
    const std::vector<double> b(n, 0.5);
    const QuadResult r = euler_integral(0.5, c, b, s.x, s.one_minus_x, s.q2, cfg.quad);
    out.value = root_alpha * r.value;
    out.abs_error = root_alpha * r.est_error;
    out.evals = r.evals;
    out.converged = r.converged;
    return out;
  }

  detail::CompensatedSum value;
  double error = 0.0;
  out.evals = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const FdParams p{0.5, eta_column(n, j), c, s.x};
    const QuadResult r = fd_series(p, cfg.series_tol, cfg.max_total_degree);
    value.add(s.q2[j] * r.value);
    error += s.q2[j] * r.est_error;
    out.evals += r.evals;
    out.converged = out.converged && r.converged;
  }
  out.value = root_alpha * value.value();
  out.abs_error = root_alpha * error;
  return out;
}

QuadResult quadform2_as_printed(const Ellipsoid& e, double alpha, const QuadConfig& cfg) {
  const std::size_t n = e.dimension();
  const RatioSetup s = ratio_setup(e, alpha);
  const double c = 0.5 * static_cast<double>(n + 1);
  const std::vector<double> b(n, 0.5);
  QuadResult r = euler_integral(0.5, c, b, s.x, s.one_minus_x, s.q2, cfg);
  const double g = gamma_half_ratio(static_cast<long>(n), 1.0);
  const double prefactor = static_cast<double>(n) * g * g * std::sqrt(s.alpha) * 0.5;
  r.value *= prefactor;
  r.est_error *= prefactor;
  return r;
}

}  // namespace ellipsurf
