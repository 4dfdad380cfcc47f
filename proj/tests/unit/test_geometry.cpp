#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"

#include "ellipsurf/ellipsoid.hpp"
#include "ellipsurf/errors.hpp"
#include "ellipsurf/geometry.hpp"

using namespace ellipsurf;
using std::numbers::pi;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("ellipsoid rejects degenerate axes and names the offender") {
    CHECK_THROWS_AS(Ellipsoid(std::vector<double>{}), InputError);
    try {
      Ellipsoid e({1.0, 2.0, 0.0});
      FAIL("no throw");
    } catch (const InputError& err) {
      CHECK(std::string(err.what()).find("axis 3") != std::string::npos);
    }
    CHECK_THROWS_AS(Ellipsoid({1.0, -1.0}), InputError);
    CHECK_THROWS_AS(Ellipsoid({1.0, INFINITY}), InputError);
    CHECK_THROWS_AS(Ellipsoid({1.0, NAN}), InputError);
    CHECK_THROWS_AS(Ellipsoid({1e-320}), InputError);
  }

  TEST_CASE("inverse axes are reciprocals and stable") {
    const Ellipsoid e({0.5, 4.0});
    CHECK(e.inverse_axes()[0] == 2.0);
    CHECK(e.inverse_axes()[1] == 0.25);
    const double q[] = {2.0, 0.25};
    const Ellipsoid f = Ellipsoid::from_inverse_axes(q);
    CHECK(f.axes()[0] == 0.5);
    CHECK(f.axes()[1] == 4.0);
    CHECK(e.log_axes_product() == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  }

  TEST_CASE("unit sphere and ball constants") {
    CHECK(unit_sphere_area(1) == doctest::Approx(2.0 * pi).epsilon(1e-15));
    CHECK(unit_sphere_area(2) == doctest::Approx(4.0 * pi).epsilon(1e-15));
    CHECK(unit_ball_volume(2) == doctest::Approx(pi).epsilon(1e-15));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-15));
    CHECK(unit_ball_volume(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(unit_sphere_area(0) == doctest::Approx(2.0).epsilon(1e-15));
    for (long n = 1; n <= 60; ++n) {
      CHECK(rel(unit_sphere_area(n - 1), static_cast<double>(n) * unit_ball_volume(n)) < 1e-13);
      CHECK(rel(unit_ball_volume(n + 1), unit_sphere_area(n) / static_cast<double>(n + 1)) < 1e-13);
    }
    CHECK_THROWS_AS(unit_ball_volume(-1), DomainError);
  }

  TEST_CASE("huge dimensions stay finite in log space and raise on underflow") {
    const double log_kappa = log_unit_ball_volume(100'000'000);
    CHECK(std::isfinite(log_kappa));
    CHECK(log_kappa < -1e8);
    CHECK_THROWS_AS(unit_ball_volume(100'000'000), RangeError);
    try {
      unit_ball_volume(100'000'000);
    } catch (const RangeError& e) {
      CHECK(e.log_value() == doctest::Approx(log_kappa));
    }
    const SphereConstants c = sphere_constants(100'000'000);
    CHECK(c.kappa == 0.0);
    CHECK(c.log_kappa == log_kappa);
  }

  TEST_CASE("log_gamma_ratio against lgamma and high-precision values") {
    for (double x : {0.25, 0.5, 1.0, 3.7, 12.0, 40.5}) {
      for (double h : {-0.2, 0.5, 1.0, 2.5}) {
        const double expected = std::lgamma(x + h) - std::lgamma(x);
        CHECK(log_gamma_ratio(x, h) == doctest::Approx(expected).epsilon(1e-13));
      }
    }
    // mpmath, 40 digits
    CHECK(rel(log_gamma_ratio(1e6, 0.5), 6.907755153982137052059182697386424) < 1e-15);
    CHECK(rel(log_gamma_ratio(1e8, 1.0 / 3.0), 6.140226913539677378986248821545135) < 1e-14);
    CHECK(rel(log_gamma_ratio(0.25, 2.5), -0.8128078577831403270575079738242884) < 1e-14);
    CHECK(log_gamma_ratio(7.0, 0.0) == 0.0);
  }

  TEST_CASE("gamma_half_ratio closed forms") {
    CHECK(gamma_half_ratio(1, 1.0) == doctest::Approx(std::sqrt(pi)).epsilon(1e-15));
    CHECK(gamma_half_ratio(2, 1.0) == doctest::Approx(2.0 / std::sqrt(pi)).epsilon(1e-15));
    for (long n = 1; n <= 40; ++n) {
      CHECK(rel(gamma_half_ratio(n, 2.0), 2.0 / static_cast<double>(n)) < 1e-14);
    }
    CHECK_THROWS_AS(gamma_half_ratio(0, 1.0), DomainError);
    CHECK_THROWS_AS(gamma_half_ratio(2, -2.0), DomainError);
  }

  TEST_CASE("ellipsoid volume and homogeneity") {
    const Ellipsoid e({1.0, 2.0, 3.0});
    CHECK(ellipsoid_volume(e) == doctest::Approx(4.0 * pi * 2.0).epsilon(1e-14));
    const Ellipsoid big(std::vector<double>(400, 1e3));
    CHECK_THROWS_AS(ellipsoid_volume(big), RangeError);
    CHECK(std::isfinite(log_ellipsoid_volume(big)));
  }

  TEST_CASE("projection volume needs a unit vector") {
    const Ellipsoid e({1.0, 2.0, 3.0});
    const double u[] = {1.0, 0.0, 0.0};
    // Shadow along x_1 is the ellipse with semi-axes 2, 3.
    CHECK(projection_volume(e, u) == doctest::Approx(6.0 * pi).epsilon(1e-14));
    const double bad[] = {1.0, 1e-5, 0.0};
    CHECK_THROWS_AS(projection_volume(e, bad), InputError);
    const double wrong_dim[] = {1.0, 0.0};
    CHECK_THROWS_AS(projection_volume(e, wrong_dim), InputError);
  }

  TEST_CASE("Cauchy formula recovers the sphere area") {
    for (std::size_t n : {2u, 3u, 7u, 12u}) {
      const Ellipsoid ball = Ellipsoid::ball(n, 2.0);
      const long m = static_cast<long>(n);
      const double mean_shadow = unit_ball_volume(m - 1) * std::pow(2.0, m - 1);
      const double area = std::pow(2.0, m - 1) * static_cast<double>(m) * unit_ball_volume(m);
      CHECK(rel(cauchy_mean_projection(ball, mean_shadow), area) < 1e-13);
    }
    CHECK_THROWS_AS(cauchy_mean_projection(Ellipsoid({1.0}), 1.0), DomainError);
  }

  TEST_CASE("surface_area scales the ratio by the volume") {
    const Ellipsoid e({1.0, 2.0});
    Estimate r;
    r.value = 3.0;
    r.abs_error = 0.5;
    r.method = Method::laplace;
    const Estimate s = surface_area(e, r);
    CHECK(s.value == doctest::Approx(3.0 * 2.0 * pi));
    CHECK(s.abs_error == doctest::Approx(0.5 * 2.0 * pi));
    CHECK(s.method == Method::laplace);
  }

  TEST_CASE("method names round-trip") {
    for (Method m : {Method::mc, Method::gauss, Method::laplace, Method::lauricella,
                     Method::asymptotic, Method::closed_form}) {
      CHECK(method_from_string(to_string(m)) == m);
    }
    CHECK_FALSE(method_from_string("simpson").has_value());
    CHECK(is_stochastic(Method::mc));
    CHECK_FALSE(is_stochastic(Method::laplace));
  }
}
