#pragma once

// Data-parallel inner loops over the n axes of an ellipsoid.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The active table is chosen once at startup from CPUID and
// can be forced with ELLIPSURF_SIMD=scalar|avx2. Variants agree to within a
// few ulp per term; summation order differs, so sums agree to ~n ulp.

#include <cstddef>
#include <span>
#include <string_view>

namespace ellipsurf::simd {

struct KernelTable {
  std::string_view name;

  // sum_i log1p(c_i * t). Domain: c_i * t >= -0.5 and finite.
  double (*sum_log1p)(const double* c, std::size_t n, double t);

  // sum_i w_i * log1p(c_i * t). Same domain.
  double (*dot_log1p)(const double* w, const double* c, std::size_t n, double t);

  // sum_i w_i / (1 + c_i * t). Domain: 1 + c_i * t > 0.
  double (*dot_reciprocal)(const double* w, const double* c, std::size_t n, double t);

  // sum_i w_i * x_i^2.
  double (*dot_squares)(const double* w, const double* x, std::size_t n);

  // sum_i x_i^2.
  double (*sum_squares)(const double* x, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

/// nullptr when the build has no AVX2 variant or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels() noexcept;

/// Table used by the numerical modules.
const KernelTable& active_kernels() noexcept;

// Convenience wrappers over the active table.
inline double sum_log1p(std::span<const double> c, double t) {
  return active_kernels().sum_log1p(c.data(), c.size(), t);
}
inline double dot_log1p(std::span<const double> w, std::span<const double> c, double t) {
  return active_kernels().dot_log1p(w.data(), c.data(), c.size(), t);
}
inline double dot_reciprocal(std::span<const double> w, std::span<const double> c, double t) {
  return active_kernels().dot_reciprocal(w.data(), c.data(), c.size(), t);
}
inline double dot_squares(std::span<const double> w, std::span<const double> x) {
  return active_kernels().dot_squares(w.data(), x.data(), x.size());
}
inline double sum_squares(std::span<const double> x) {
  return active_kernels().sum_squares(x.data(), x.size());
}

}  // namespace ellipsurf::simd
