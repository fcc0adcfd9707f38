#include <cstdlib>
#include <string_view>

#include "mgsim/kernels.hpp"

namespace mgsim::kernels {

#if defined(MGSIM_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

const KernelTable* avx2_table() {
#if defined(MGSIM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_kernels() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  const char* env = std::getenv("MGSIM_SIMD");
  const std::string_view request = env != nullptr ? env : "auto";
  if (request == "scalar") return scalar_table();
  if (const KernelTable* fast = avx2_table()) return *fast;
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace mgsim::kernels
