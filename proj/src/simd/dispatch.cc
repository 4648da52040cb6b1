#include <atomic>
#include <cstdlib>
#include <string_view>

#include "ue/errors.h"
#include "ue/simd/kernels.h"

namespace ue::simd {

#ifndef UE_HAVE_AVX2
const Kernels* avx2_kernels() { return nullptr; }
#endif

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

const Kernels* choose() {
  const char* env = std::getenv("UE_SIMD");
  if (env != nullptr && std::string_view(env) == "scalar") return &scalar_kernels();
  if (avx2_kernels() != nullptr && cpu_has_avx2()) return avx2_kernels();
  return &scalar_kernels();
}

std::atomic<const Kernels*>& slot() {
  static std::atomic<const Kernels*> current{choose()};
  return current;
}

}  // namespace

const Kernels& active() { return *slot().load(std::memory_order_relaxed); }

void force(Isa isa) {
  if (isa == Isa::kScalar) {
    slot().store(&scalar_kernels());
    return;
  }
  if (avx2_kernels() == nullptr || !cpu_has_avx2()) {
    throw InvalidArgument("AVX2 kernels are not available on this machine");
  }
  slot().store(avx2_kernels());
}

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

}  // namespace ue::simd
