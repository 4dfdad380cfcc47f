#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>
#include <vector>

#include "doctest.h"

#include "ellipsurf/errors.hpp"
#include "ellipsurf/geometry.hpp"
#include "ellipsurf/laplace_quad.hpp"
#include "ellipsurf/rng.hpp"
#include "ellipsurf/sphere_mc.hpp"
#include "ellipsurf/asymptotics.hpp"

using namespace ellipsurf;

namespace {

const HomogeneousFn kX1Squared{2.0, [](std::span<const double> x) { return x[0] * x[0]; }};

struct ThreadsEnv {
  explicit ThreadsEnv(const char* value) {
    if (const char* old = std::getenv("ELLIPSURF_THREADS")) saved = old;
    setenv("ELLIPSURF_THREADS", value, 1);
  }
  ~ThreadsEnv() {
    if (saved.empty()) {
      unsetenv("ELLIPSURF_THREADS");
    } else {
      setenv("ELLIPSURF_THREADS", saved.c_str(), 1);
    }
  }
  std::string saved;
};

}  // namespace

TEST_SUITE("rng") {
  TEST_CASE("Philox4x32-10 known-answer vectors") {
    using A4 = std::array<std::uint32_t, 4>;
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
  }

  TEST_CASE("streams are reproducible and distinct") {
    RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
      const std::uint64_t va = a.next_u64();
      CHECK(va == b.next_u64());
      seen.insert(va);
      seen.insert(c.next_u64());
      seen.insert(d.next_u64());
    }
    CHECK(seen.size() == 3000);
  }

  TEST_CASE("uniform and normal moments") {
    RngStream rng(1, 0);
    double sum = 0.0, sum2 = 0.0, umin = 1.0, umax = 0.0;
    const int count = 200000;
    for (int i = 0; i < count; ++i) {
      const double u = rng.next_uniform();
      umin = std::min(umin, u);
      umax = std::max(umax, u);
      const double z = rng.next_normal();
      sum += z;
      sum2 += z * z;
    }
    CHECK(umin > 0.0);
    CHECK(umax <= 1.0);
    CHECK(std::abs(sum / count) < 4.0 / std::sqrt(count));
    CHECK(std::abs(sum2 / count - 1.0) < 4.0 * std::sqrt(2.0 / count));
  }
}

TEST_SUITE("sphere_mc") {
  TEST_CASE("sphere samples have unit norm") {
    RngStream rng(3, 3);
    for (std::size_t n : {1u, 2u, 3u, 17u}) {
      const auto u = sample_sphere(n, rng);
      double s = 0.0;
      for (double v : u) s += v * v;
      CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  TEST_CASE("mean of x_1^2 over the sphere is 1/n") {
    McConfig cfg;
    cfg.samples = 200'000;
    for (std::size_t n : {2u, 5u, 10u}) {
      const Estimate e = sphere_mean_mc(kX1Squared, n, cfg);
      CHECK(e.seed == cfg.seed);
      CHECK(e.method == Method::mc);
      CHECK(e.evals == cfg.samples);
      CHECK(std::abs(e.value - 1.0 / static_cast<double>(n)) <= 4.0 * e.abs_error);
      const Estimate g = sphere_mean_via_gaussian(kX1Squared, n, cfg);
      CHECK(std::abs(g.value - 1.0 / static_cast<double>(n)) <= 4.0 * g.abs_error);
    }
  }

  TEST_CASE("results do not depend on the worker count") {
    McConfig cfg;
    cfg.samples = 100'000;
    cfg.chunk_size = 4096;
    const Ellipsoid e({1.0, 2.0, 3.0});
    Estimate one, many;
    {
      ThreadsEnv env("1");
      one = iso_ratio_mc(e, cfg);
    }
    {
      ThreadsEnv env("5");
      many = iso_ratio_mc(e, cfg);
    }
    CHECK(one.value == many.value);
    CHECK(one.abs_error == many.abs_error);
    cfg.seed += 1;
    CHECK(iso_ratio_mc(e, cfg).value != one.value);
  }

  TEST_CASE("ball ratio has zero variance") {
    McConfig cfg;
    cfg.samples = 1000;
    const Estimate r = iso_ratio_mc(Ellipsoid::ball(4), cfg);
    CHECK(r.value == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(r.abs_error < 1e-12);
  }

  TEST_CASE("both MC routes agree with laplace") {
    McConfig cfg;
    cfg.samples = 400'000;
    const Ellipsoid e({0.5, 1.0, 4.0, 2.0});
    const double ref = iso_ratio_quad(e).value;
    const Estimate direct = iso_ratio_mc(e, cfg, McRoute::direct_sphere);
    const Estimate gauss = iso_ratio_mc(e, cfg, McRoute::gaussian_transform);
    CHECK(gauss.method == Method::gauss);
    CHECK(std::abs(direct.value - ref) <= 4.0 * direct.abs_error);
    CHECK(std::abs(gauss.value - ref) <= 4.0 * gauss.abs_error);
  }

  TEST_CASE("L1 norm mean matches its closed form") {
    McConfig cfg;
    cfg.samples = 200'000;
    for (std::size_t n : {2u, 6u}) {
      const Estimate e = mean_lp_norm_mc(n, 1.0, cfg);
      CHECK(std::abs(e.value - mean_lp_norm_asymptotic(static_cast<long>(n), 1.0)) <= 4.0 * e.abs_error);
    }
  }

  TEST_CASE("homogeneity is checked on request") {
    const HomogeneousFn bad{1.0, [](std::span<const double> x) { return x[0] * x[0] + 1.0; }};
    CHECK_THROWS_AS(validate_homogeneity(bad, 3), InputError);
    CHECK_NOTHROW(validate_homogeneity(kX1Squared, 3));
    McConfig cfg;
    cfg.samples = 100;
    cfg.check_homogeneity = true;
    CHECK_THROWS_AS(sphere_mean_mc(bad, 3, cfg), InputError);
  }

  TEST_CASE("config and non-finite integrands") {
    McConfig cfg;
    cfg.samples = 1;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg.samples = 100;
    const HomogeneousFn nan_fn{0.0, [](std::span<const double>) { return std::nan(""); }};
    CHECK_THROWS_AS(sphere_mean_mc(nan_fn, 2, cfg), NonFiniteError);
  }
}
