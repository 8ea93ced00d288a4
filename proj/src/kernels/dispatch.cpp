#include <cstdlib>
#include <string_view>

#include "ciprng/kernels.hpp"

namespace ciprng::kernels {

#if defined(CIPRNG_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

const KernelTable* avx2() {
#if defined(CIPRNG_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  }();
  return supported ? &kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable* chosen = [] {
    const char* forced = std::getenv("CIPRNG_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") return &scalar();
    const KernelTable* fast = avx2();
    return fast != nullptr ? fast : &scalar();
  }();
  return *chosen;
}

}  // namespace ciprng::kernels
