#include "bcdt/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace bcdt::kernels {

#if defined(BCDT_HAVE_AVX2)
namespace avx2 {
const KernelTable& table();
}
#endif
#if defined(BCDT_HAVE_NEON)
namespace neon {
const KernelTable& table();
}
#endif

const KernelTable* avx2_kernels() {
#if defined(BCDT_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return supported ? &avx2::table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_kernels() {
#if defined(BCDT_HAVE_NEON)
  // Advanced SIMD is mandatory on AArch64.
  return &neon::table();
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("BCDT_SIMD");
    if (env && std::string_view(env) == "scalar")
      return scalar_kernels();
    if (const KernelTable* t = avx2_kernels())
      return *t;
    if (const KernelTable* t = neon_kernels())
      return *t;
    return scalar_kernels();
  }();
  return chosen;
}

} // namespace bcdt::kernels
