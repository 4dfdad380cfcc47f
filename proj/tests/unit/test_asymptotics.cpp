#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "ellipsurf/asymptotics.hpp"
#include "ellipsurf/errors.hpp"
#include "ellipsurf/geometry.hpp"
#include "ellipsurf/laplace_quad.hpp"

using namespace ellipsurf;
using std::numbers::pi;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_SUITE("asymptotics") {
  TEST_CASE("lovar diagnostic") {
    const std::vector<double> ones(7, 1.0);
    CHECK(lovar_diagnostic(ones).ratio == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
    const double spike[] = {1.0, 0.0, 0.0};
    CHECK(lovar_diagnostic(spike).ratio == 1.0);
    const double q123[] = {1.0, 2.0, 3.0};
    const LovarDiagnostic d = lovar_diagnostic(q123);
    CHECK(d.sum_q2 == 14.0);
    CHECK(d.sum_q4 == 98.0);
    CHECK(d.ratio == 0.5);
    const double zeros[] = {0.0, 0.0};
    CHECK_THROWS_AS(lovar_diagnostic(zeros), InputError);
  }

  TEST_CASE("asymptotic ratio") {
    const Estimate r2 = iso_ratio_asymptotic(Ellipsoid::ball(2));
    CHECK(r2.value == doctest::Approx(4.0 / std::sqrt(pi)).epsilon(1e-14));
    CHECK(r2.abs_error == 0.0);
    CHECK(r2.method == Method::asymptotic);
    CHECK(rel(iso_ratio_asymptotic(Ellipsoid::ball(10'000)).value, 1e4) < 1e-4);
    const double r_ball = iso_ratio_asymptotic(Ellipsoid::ball(9)).value;
    CHECK(rel(iso_ratio_asymptotic(Ellipsoid::ball(9, 2.5)).value, r_ball / 2.5) < 1e-14);
    CHECK(std::isfinite(iso_ratio_asymptotic(Ellipsoid(std::vector<double>(10, 1e-200))).value));
  }

  TEST_CASE("mean Lp norm") {
    CHECK(std::abs(mean_lp_norm_asymptotic(10'000, 2.0) - 1.0) < 1e-4);
    for (long n : {1L, 2L, 7L, 100L}) {
      const double expected = std::sqrt(0.5 * static_cast<double>(n)) * gamma_half_ratio(n, 1.0);
      CHECK(rel(mean_lp_norm_asymptotic(n, 2.0), expected) < 1e-14);
    }
  }

  TEST_CASE("L2 bounds") {
    const BoundsReport b1 = bounds_l2(Ellipsoid({1.0}));
    CHECK(b1.lower_const == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(b1.ratio_lower == doctest::Approx(1.0).epsilon(1e-15));
    for (std::size_t n = 1; n <= 200; ++n) {
      const BoundsReport b = bounds_l2(Ellipsoid::ball(n));
      CHECK(rel(b.upper_const / b.lower_const, 1.5 * std::sqrt(pi)) < 1e-13);
      CHECK(b.ratio_lower <= 1.0);
      CHECK(b.ratio_upper >= 1.0);
      CHECK(b.area_lower <= b.area_upper);
      CHECK(b.area_lower > 0.0);
    }
    CHECK_THROWS_AS(bounds_l2(Ellipsoid(std::vector<double>(400, 1e3))), RangeError);
  }

  TEST_CASE("upper bound holds for random ellipsoids") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> logu(std::log(0.1), std::log(10.0));
    for (int i = 0; i < 60; ++i) {
      std::vector<double> axes(2 + i % 30);
      for (double& a : axes) a = std::exp(logu(gen));
      const Ellipsoid e(axes);
      const BoundsReport b = bounds_l2(e);
      const double r = iso_ratio_quad(e).value / static_cast<double>(axes.size());
      CHECK(r >= b.ratio_lower * (1.0 - 1e-12));
      CHECK(r <= b.ratio_upper * (1.0 + 1e-12));
    }
  }

  TEST_CASE("Lp norms") {
    const double q34[] = {3.0, 4.0};
    CHECK(lp_norm(q34, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
    const double ones[] = {1.0, 1.0, 1.0, 1.0};
    CHECK(lp_norm(ones, 1.0) == doctest::Approx(4.0).epsilon(1e-15));
    const double huge[] = {3e300, 4e300};
    CHECK(lp_norm(huge, 2.0) == doctest::Approx(5e300).epsilon(1e-15));
    const double q23[] = {2.0, 3.0};
    const double a23[] = {0.5, 1.0 / 3.0};
    CHECK(lp_norm(q23, 1.0) == doctest::Approx(6.0 * elementary_symmetric(a23, 1)).epsilon(1e-15));
  }

  TEST_CASE("elementary symmetric polynomials") {
    const double v[] = {1.0, 2.0, 3.0};
    CHECK(elementary_symmetric(v, 0) == 1.0);
    CHECK(elementary_symmetric(v, 1) == 6.0);
    CHECK(elementary_symmetric(v, 2) == 11.0);
    CHECK(elementary_symmetric(v, 3) == 6.0);
    CHECK_THROWS_AS(elementary_symmetric(v, 4), InputError);

    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> unit(0.2, 5.0);
    for (int i = 0; i < 20; ++i) {
      std::vector<double> q(2 + i % 6);
      for (double& x : q) x = unit(gen);
      for (double p : {1.0, 2.0, 3.0}) {
        std::vector<double> ap;
        double prod_q = 1.0;
        for (double x : q) {
          ap.push_back(std::pow(1.0 / x, p));
          prod_q *= x;
        }
        const double via_sigma = prod_q * std::pow(elementary_symmetric(ap, q.size() - 1), 1.0 / p);
        CHECK(rel(via_sigma, lp_norm(q, p)) < 1e-10);
      }
    }
  }

  TEST_CASE("gamma ratio check") {
    CHECK(std::abs(gamma_ratio_asymptotic_check(1e6, 0.5) - 1.0) < 1e-5);
    // mpmath: 0.99999962500013281245...
    CHECK(rel(gamma_ratio_asymptotic_check(1e6, 0.5), 0.9999996250001328124521484583) < 1e-14);
    CHECK(gamma_ratio_asymptotic_check(3.3, 0.0) == 1.0);
    CHECK(gamma_ratio_asymptotic_check(10.0, 1.0) == doctest::Approx(10.0 / 11.0).epsilon(1e-15));
    CHECK_THROWS_AS(gamma_ratio_asymptotic_check(-1.0, 0.5), DomainError);
    CHECK_THROWS_AS(gamma_ratio_asymptotic_check(1.0, -1.0), DomainError);
  }
}
