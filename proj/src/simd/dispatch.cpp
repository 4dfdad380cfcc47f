#include <cstdlib>
#include <string_view>

#include "ellipsurf/simd/kernels.hpp"
#include "kernels_impl.hpp"

namespace ellipsurf::simd {
namespace {

constexpr KernelTable kScalar{
    "scalar",
    detail::sum_log1p_scalar,
    detail::dot_log1p_scalar,
    detail::dot_reciprocal_scalar,
    detail::dot_squares_scalar,
    detail::sum_squares_scalar,
};

#if defined(ELLIPSURF_HAVE_AVX2)
constexpr KernelTable kAvx2{
    "avx2",
    detail::sum_log1p_avx2,
    detail::dot_log1p_avx2,
    detail::dot_reciprocal_avx2,
    detail::dot_squares_avx2,
    detail::sum_squares_avx2,
};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& select() noexcept {
  const char* forced = std::getenv("ELLIPSURF_SIMD");
  const std::string_view want = forced ? forced : "";
  if (want == "scalar") return kScalar;
  if (const KernelTable* t = avx2_kernels()) return *t;
  return kScalar;
}

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

const KernelTable* avx2_kernels() noexcept {
#if defined(ELLIPSURF_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() noexcept {
  static const KernelTable& table = select();
  return table;
}

}  // namespace ellipsurf::simd
