// Compiled with -mavx2 -mfma. Only called after CPUID confirms support, so this
// file must not instantiate inline library templates that could be merged into
// baseline code.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace ellipsurf::simd::detail {
namespace {

inline __m256i tail_mask(std::size_t remaining) {
  return _mm256_cmpgt_epi64(_mm256_set1_epi64x(static_cast<long long>(remaining)),
                            _mm256_set_epi64x(3, 2, 1, 0));
}

inline double horizontal_sum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

// log1p for y >= -0.5. Splits 1+y into 2^k * m with m in [sqrt(1/2), sqrt(2)),
// evaluates log(m) = 2 atanh((m-1)/(m+1)) by its odd series through f^23, and
// adds back the rounding error of 1+y with the usual (y - (u-1))/u correction.
inline __m256d log1p_pd(__m256d y) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d u = _mm256_add_pd(one, y);

  const __m256i bits = _mm256_castpd_si256(u);
  const __m256i expo = _mm256_srli_epi64(bits, 52);
  const __m256i mant_bits =
      _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                      _mm256_set1_epi64x(0x3FF0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mant_bits);
  // 2^52 + e reinterpreted, minus 2^52 + 1023, is e - 1023 exactly.
  __m256d k = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(expo, _mm256_set1_epi64x(0x4330000000000000LL))),
      _mm256_set1_pd(4503599627371519.0));

  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  k = _mm256_add_pd(k, _mm256_and_pd(big, one));

  const __m256d f = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d f2 = _mm256_mul_pd(f, f);
  __m256d p = _mm256_set1_pd(1.0 / 23.0);
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 21.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 19.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 17.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 15.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 13.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 11.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 9.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 7.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 5.0));
  p = _mm256_fmadd_pd(p, f2, _mm256_set1_pd(1.0 / 3.0));
  const __m256d s = _mm256_mul_pd(f2, p);
  const __m256d two_f = _mm256_add_pd(f, f);

  const __m256d corr = _mm256_div_pd(_mm256_sub_pd(y, _mm256_sub_pd(u, one)), u);
  const __m256d lo = _mm256_fmadd_pd(k, _mm256_set1_pd(1.90821492927058770002e-10), corr);
  __m256d t = _mm256_fmadd_pd(two_f, s, lo);
  t = _mm256_add_pd(two_f, t);
  return _mm256_fmadd_pd(k, _mm256_set1_pd(6.93147180369123816490e-01), t);
}

}  // namespace

double sum_log1p_avx2(const double* c, std::size_t n, double t) {
  const __m256d tv = _mm256_set1_pd(t);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, log1p_pd(_mm256_mul_pd(_mm256_loadu_pd(c + i), tv)));
  }
  if (i < n) {
    const __m256d cv = _mm256_maskload_pd(c + i, tail_mask(n - i));
    acc = _mm256_add_pd(acc, log1p_pd(_mm256_mul_pd(cv, tv)));
  }
  return horizontal_sum(acc);
}

double dot_log1p_avx2(const double* w, const double* c, std::size_t n, double t) {
  const __m256d tv = _mm256_set1_pd(t);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d l = log1p_pd(_mm256_mul_pd(_mm256_loadu_pd(c + i), tv));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), l, acc);
  }
  if (i < n) {
    const __m256i mask = tail_mask(n - i);
    const __m256d l = log1p_pd(_mm256_mul_pd(_mm256_maskload_pd(c + i, mask), tv));
    acc = _mm256_fmadd_pd(_mm256_maskload_pd(w + i, mask), l, acc);
  }
  return horizontal_sum(acc);
}

double dot_reciprocal_avx2(const double* w, const double* c, std::size_t n, double t) {
  const __m256d tv = _mm256_set1_pd(t);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d den = _mm256_fmadd_pd(_mm256_loadu_pd(c + i), tv, one);
    acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_loadu_pd(w + i), den));
  }
  if (i < n) {
    const __m256i mask = tail_mask(n - i);
    const __m256d den = _mm256_fmadd_pd(_mm256_maskload_pd(c + i, mask), tv, one);
    acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_maskload_pd(w + i, mask), den));
  }
  return horizontal_sum(acc);
}

double dot_squares_avx2(const double* w, const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), xv), xv, acc);
  }
  if (i < n) {
    const __m256i mask = tail_mask(n - i);
    const __m256d xv = _mm256_maskload_pd(x + i, mask);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_maskload_pd(w + i, mask), xv), xv, acc);
  }
  return horizontal_sum(acc);
}

double sum_squares_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  if (i < n) {
    const __m256d xv = _mm256_maskload_pd(x + i, tail_mask(n - i));
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  return horizontal_sum(acc);
}

}  // namespace ellipsurf::simd::detail
