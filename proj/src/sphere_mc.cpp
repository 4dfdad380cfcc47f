#include "ellipsurf/sphere_mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>

#include "ellipsurf/errors.hpp"
#include "ellipsurf/geometry.hpp"
#include "ellipsurf/simd/kernels.hpp"

namespace ellipsurf {
namespace {

// Stream-id domains keep the sphere and Gaussian estimators independent.
constexpr std::uint64_t kSphereDomain = 0;
constexpr std::uint64_t kGaussianDomain = 1ull << 63;
constexpr std::uint64_t kValidationStream = (1ull << 62) | 0xC0FFEEull;

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

struct Moments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations

  void push(double x) noexcept {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
};

Moments merge(const Moments& a, const Moments& b) noexcept {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  Moments out;
  out.count = a.count + b.count;
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  const double delta = b.mean - a.mean;
  out.mean = a.mean + delta * (nb / static_cast<double>(out.count));
  out.m2 = a.m2 + b.m2 + delta * delta * (na * nb / static_cast<double>(out.count));
  return out;
}

Moments merge_range(const std::vector<Moments>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return merge(merge_range(parts, lo, mid), merge_range(parts, mid, hi));
}

std::string describe_point(std::span<const double> x) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

using PointSampler = void (*)(std::span<double>, RngStream&);

void gaussian_point(std::span<double> out, RngStream& rng) {
  for (double& v : out) v = kInvSqrt2 * rng.next_normal();
}

void sphere_point(std::span<double> out, RngStream& rng) { sample_sphere(out, rng); }

Moments run_chunks(const HomogeneousFn& f, std::size_t n, const McConfig& cfg,
                   std::uint64_t domain, PointSampler sampler) {
  const std::int64_t chunk = cfg.chunk_size;
  const std::size_t chunks = static_cast<std::size_t>((cfg.samples + chunk - 1) / chunk);
  std::vector<Moments> parts(chunks);
  std::vector<std::exception_ptr> failures(chunks);
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    std::vector<double> point(n);
    for (std::size_t k = next.fetch_add(1); k < chunks; k = next.fetch_add(1)) {
      try {
        RngStream rng(cfg.seed, domain | k);
        const std::int64_t begin = static_cast<std::int64_t>(k) * chunk;
        const std::int64_t end = std::min(cfg.samples, begin + chunk);
        Moments m;
        for (std::int64_t i = begin; i < end; ++i) {
          sampler(point, rng);
          const double v = f.eval(point);
          if (!std::isfinite(v)) {
            throw NonFiniteError("integrand returned " + std::to_string(v) + " at " +
                                 describe_point(point));
          }
          m.push(v);
        }
        parts[k] = m;
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(mc_worker_count(), chunks));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return merge_range(parts, 0, chunks);
}

Estimate finish(const Moments& m, Method method, const McConfig& cfg) {
  Estimate e;
  e.value = m.mean;
  const double count = static_cast<double>(m.count);
  e.abs_error = std::sqrt(std::max(0.0, m.m2) / (count - 1.0)) / std::sqrt(count);
  e.method = method;
  e.evals = m.count;
  e.seed = cfg.seed;
  return e;
}

void require_dimension(std::size_t n) {
  if (n < 1) throw InputError("dimension must be >= 1");
}

void prepare(const HomogeneousFn& f, std::size_t n, const McConfig& cfg) {
  require_dimension(n);
  cfg.validate();
  if (!f.eval) throw InputError("HomogeneousFn has no evaluator");
  if (cfg.check_homogeneity) validate_homogeneity(f, n, cfg.seed);
}

}  // namespace

void McConfig::validate() const {
  if (samples < 2) throw InputError("McConfig: samples must be >= 2");
  if (chunk_size < 1) throw InputError("McConfig: chunk_size must be >= 1");
}

unsigned mc_worker_count() {
  if (const char* env = std::getenv("ELLIPSURF_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void validate_homogeneity(const HomogeneousFn& f, std::size_t n, std::uint64_t seed) {
  require_dimension(n);
  RngStream rng(seed, kValidationStream);
  std::vector<double> x(n);
  std::vector<double> scaled(n);
  for (int trial = 0; trial < 8; ++trial) {
    for (double& v : x) v = rng.next_normal();
    const double base = f.eval(x);
    for (double lambda : {0.5, 2.0}) {
      for (std::size_t i = 0; i < n; ++i) scaled[i] = lambda * x[i];
      const double expected = std::pow(lambda, f.degree) * base;
      const double got = f.eval(scaled);
      if (!(std::fabs(got - expected) <= 1e-10 * std::fabs(expected)) && got != expected) {
        throw InputError("function is not homogeneous of degree " + std::to_string(f.degree) +
                         ": f(" + std::to_string(lambda) + " x) = " + std::to_string(got) +
                         ", expected " + std::to_string(expected) + " at x = " +
                         describe_point(x));
      }
    }
  }
}

void sample_sphere(std::span<double> out, RngStream& rng) {
  if (out.empty()) throw InputError("sample_sphere: dimension must be >= 1");
  for (;;) {
    for (double& v : out) v = rng.next_normal();
    const double norm = std::sqrt(simd::sum_squares(out));
    if (norm > 0.0) {
      for (double& v : out) v /= norm;
      return;
    }
  }
}

std::vector<double> sample_sphere(std::size_t n, RngStream& rng) {
  std::vector<double> out(n);
  sample_sphere(out, rng);
  return out;
}

Estimate sphere_mean_mc(const HomogeneousFn& f, std::size_t n, const McConfig& cfg) {
  prepare(f, n, cfg);
  return finish(run_chunks(f, n, cfg, kSphereDomain, sphere_point), Method::mc, cfg);
}

Estimate gaussian_mean_mc(const HomogeneousFn& f, std::size_t n, const McConfig& cfg) {
  prepare(f, n, cfg);
  return finish(run_chunks(f, n, cfg, kGaussianDomain, gaussian_point), Method::gauss, cfg);
}

Estimate sphere_mean_via_gaussian(const HomogeneousFn& f, std::size_t n, const McConfig& cfg) {
  require_dimension(n);
  const double factor = gamma_half_ratio(static_cast<long>(n), f.degree);
  Estimate e = gaussian_mean_mc(f, n, cfg);
  e.value *= factor;
  e.abs_error *= factor;
  return e;
}

Estimate iso_ratio_mc(const Ellipsoid& e, const McConfig& cfg, McRoute route) {
  const std::size_t n = e.dimension();
  std::vector<double> q2;
  q2.reserve(n);
  for (double q : e.inverse_axes()) q2.push_back(q * q);
  const HomogeneousFn f{1.0, [&q2](std::span<const double> x) {
                          return std::sqrt(simd::dot_squares(q2, x));
                        }};
  Estimate est = route == McRoute::direct_sphere ? sphere_mean_mc(f, n, cfg)
                                                 : sphere_mean_via_gaussian(f, n, cfg);
  est.value *= static_cast<double>(n);
  est.abs_error *= static_cast<double>(n);
  return est;
}

Estimate mean_lp_norm_mc(std::size_t n, double p, const McConfig& cfg) {
  if (!(p > 0.0) || !std::isfinite(p)) throw InputError("mean_lp_norm_mc: p must be > 0");
  const HomogeneousFn f{1.0, [p](std::span<const double> x) {
                          double mx = 0.0;
                          for (double v : x) mx = std::max(mx, std::fabs(v));
                          if (mx == 0.0) return 0.0;
                          double acc = 0.0;
                          for (double v : x) acc += std::pow(std::fabs(v) / mx, p);
                          return mx * std::pow(acc, 1.0 / p);
                        }};
  return sphere_mean_via_gaussian(f, n, cfg);
}

}  // namespace ellipsurf
