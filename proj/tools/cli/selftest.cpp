#include "cli/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "cli/request.hpp"
#include "ellipsurf/asymptotics.hpp"
#include "ellipsurf/ellipsoid.hpp"
#include "ellipsurf/geometry.hpp"
#include "ellipsurf/laplace_quad.hpp"
#include "ellipsurf/lauricella.hpp"
#include "ellipsurf/sphere_mc.hpp"

namespace ellipsurf::cli {

namespace {

constexpr std::uint64_t kSelftestSeed = 20240611;

struct Outcome {
  bool ok = true;
  std::string detail;
};

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(const char* pattern, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

Outcome sphere_exactness() {
  double worst = 0.0;
  for (long n = 2; n <= 20; ++n) {
    const Ellipsoid ball = Ellipsoid::ball(static_cast<std::size_t>(n));
    const double area = surface_area(ball, iso_ratio_quad(ball)).value;
    worst = std::max(worst, rel_diff(area, static_cast<double>(n) * unit_ball_volume(n)));
  }
  return {worst <= 1e-10, fmt("n = 2..20, max rel err %.3g (limit %.0e)", worst, 1e-10)};
}

Outcome homothm_identity(const std::function<double(long, double)>& ghr) {
  // Deterministic: mean of |u|^2 over the sphere is 1, and E|X|^2 = n/2.
  double worst = 0.0;
  for (long n = 1; n <= 64; ++n) {
    worst = std::max(worst, std::abs(ghr(n, 2.0) * 0.5 * static_cast<double>(n) - 1.0));
  }
  // The unit ball: R = n * ghr(n, 1) * E|X| must equal n.
  for (long n = 1; n <= 64; ++n) {
    const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
    const double moment = sqrt_qform_moment(ones).value;
    worst = std::max(worst, std::abs(ghr(n, 1.0) * moment - 1.0));
  }
  if (worst > 1e-12) {
    return {false, fmt("max deviation %.3g (limit %.0e)", worst, 1e-12)};
  }
  // Sampled: sphere mean of |x_1| against the Gaussian route, n = 3.
  const HomogeneousFn abs_x1{1.0, [](std::span<const double> x) { return std::abs(x[0]); }};
  McConfig cfg;
  cfg.samples = 200'000;
  cfg.seed = kSelftestSeed;
  const Estimate direct = sphere_mean_mc(abs_x1, 3, cfg);
  const Estimate gauss = gaussian_mean_mc(abs_x1, 3, cfg);
  const double bridged = ghr(3, 1.0) * gauss.value;
  const double sigma = std::hypot(direct.abs_error, ghr(3, 1.0) * gauss.abs_error);
  const double z = std::abs(direct.value - bridged) / sigma;
  return {z <= 4.0, fmt("exact cases max dev %.3g; sampled |x_1| at n = 3: %.2f sigma", worst, z)};
}

Outcome sandwich() {
  const AxisLaw law{AxisLaw::Kind::loguniform, 0.1, 10.0};
  int count = 0;
  for (std::size_t n = 2; n <= 20; ++n) {
    for (std::uint64_t k = 0; k < 10; ++k) {
      const Ellipsoid e(draw_axes(law, n, kSelftestSeed + k));
      const BoundsReport b = bounds_l2(e);
      const double norm_r = iso_ratio_quad(e).value / static_cast<double>(n);
      if (!(norm_r >= b.ratio_lower * (1.0 - 1e-12) && norm_r <= b.ratio_upper * (1.0 + 1e-12))) {
        return {false, fmt("violated at n = %.0f, |q|_R = %.17g", static_cast<double>(n), norm_r)};
      }
      if (std::abs(b.upper_const / b.lower_const / (1.5 * std::sqrt(std::numbers::pi)) - 1.0) > 1e-13) {
        return {false, fmt("constant ratio off at n = %.0f (%.17g)", static_cast<double>(n),
                           b.upper_const / b.lower_const)};
      }
      ++count;
    }
  }
  return {true, std::to_string(count) + " random ellipsoids, n = 2..20"};
}

Outcome fd_dual_route() {
  double worst = 0.0;
  const std::vector<FdParams> cases = {
      {0.5, {0.5}, 1.5, {0.25}},
      {0.5, {1.5, 0.5, 0.5}, 2.5, {0.3, -0.4, 0.6}},
      {0.5, {0.5, 1.5}, 2.0, {-0.8, 0.7}},
      {1.0, {0.25, 0.75, 1.0, 0.5}, 3.5, {0.1, 0.2, -0.3, 0.5}},
  };
  for (const auto& p : cases) {
    worst = std::max(worst, rel_diff(fd_series(p).value, fd_integral(p).value));
  }
  const Ellipsoid e({1.0, 2.0, 3.0});
  const double ref = iso_ratio_quad(e).value;
  worst = std::max(worst, rel_diff(iso_ratio_lauricella(e, std::nullopt).value, ref));
  worst = std::max(worst, rel_diff(iso_ratio_lauricella(e, std::nullopt, FdRoute::series).value, ref));
  return {worst <= 1e-9, fmt("series vs integral vs laplace, max rel diff %.3g (limit %.0e)", worst, 1e-9)};
}

}  // namespace

SelftestResult run_selftest(const SelftestHooks& hooks) {
  const std::function<double(long, double)> ghr =
      hooks.gamma_half_ratio ? hooks.gamma_half_ratio
                             : [](long n, double d) { return gamma_half_ratio(n, d); };
  struct Property {
    const char* name;
    std::function<Outcome()> check;
  };
  const Property properties[] = {
      {"sphere_exactness", sphere_exactness},
      {"gamma_half_ratio", [&] { return homothm_identity(ghr); }},
      {"l2_sandwich", sandwich},
      {"fd_dual_route", fd_dual_route},
  };
  SelftestResult result;
  for (const auto& p : properties) {
    Outcome o;
    try {
      o = p.check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    result.lines.push_back(std::string(o.ok ? "PASS " : "FAIL ") + p.name + ": " + o.detail);
    if (!o.ok && result.passed) {
      result.passed = false;
      result.first_failure = p.name;
    }
  }
  return result;
}

}  // namespace ellipsurf::cli
