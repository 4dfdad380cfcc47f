#include <cmath>

#include "kernels_impl.hpp"

namespace ellipsurf::simd::detail {

double sum_log1p_scalar(const double* c, std::size_t n, double t) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::log1p(c[i] * t);
  return acc;
}

double dot_log1p_scalar(const double* w, const double* c, std::size_t n, double t) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::log1p(c[i] * t);
  return acc;
}

double dot_reciprocal_scalar(const double* w, const double* c, std::size_t n, double t) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] / (1.0 + c[i] * t);
  return acc;
}

double dot_squares_scalar(const double* w, const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * x[i] * x[i];
  return acc;
}

double sum_squares_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

}  // namespace ellipsurf::simd::detail
