#pragma once

#include <cstddef>

namespace ellipsurf::simd::detail {

double sum_log1p_scalar(const double* c, std::size_t n, double t);
double dot_log1p_scalar(const double* w, const double* c, std::size_t n, double t);
double dot_reciprocal_scalar(const double* w, const double* c, std::size_t n, double t);
double dot_squares_scalar(const double* w, const double* x, std::size_t n);
double sum_squares_scalar(const double* x, std::size_t n);

#if defined(ELLIPSURF_HAVE_AVX2)
double sum_log1p_avx2(const double* c, std::size_t n, double t);
double dot_log1p_avx2(const double* w, const double* c, std::size_t n, double t);
double dot_reciprocal_avx2(const double* w, const double* c, std::size_t n, double t);
double dot_squares_avx2(const double* w, const double* x, std::size_t n);
double sum_squares_avx2(const double* x, std::size_t n);
#endif

}  // namespace ellipsurf::simd::detail
