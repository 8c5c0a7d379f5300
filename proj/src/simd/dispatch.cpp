#include <cstdlib>
#include <string_view>

#include "knub/simd/bitops.hpp"

namespace knub::simd {

#ifdef KNUB_HAVE_AVX2_KERNELS
namespace avx2 {
const Kernels& kernels();
}
#endif

const Kernels* avx2_kernels() {
#ifdef KNUB_HAVE_AVX2_KERNELS
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  }();
  return supported ? &avx2::kernels() : nullptr;
#else
  return nullptr;
#endif
}

const Kernels& active_kernels() {
  static const Kernels& chosen = []() -> const Kernels& {
    const char* forced = std::getenv("KNUB_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
    if (const Kernels* k = avx2_kernels()) return *k;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace knub::simd
