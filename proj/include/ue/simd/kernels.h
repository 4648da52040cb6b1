#ifndef UE_SIMD_KERNELS_H_
#define UE_SIMD_KERNELS_H_

// Element-wise kernels used by the batched policy updates.
//
// Every kernel has a scalar reference implementation and an AVX2 variant.
// The variants perform the same IEEE operations in the same order (no fused
// multiply-add), so their results are bitwise identical and the dispatcher
// may pick either at runtime.

#include <cstddef>
#include <string_view>

namespace ue::simd {

enum class Isa { kScalar, kAvx2 };

// MMD logits: out[i] = (logp[i] + eta * q[i] + eta * alpha * logrho[i]) / (1 + alpha * eta),
// with the division performed as a multiplication by the precomputed reciprocal.
// `out` may alias `logp`.
using MmdLogitsFn = void (*)(std::size_t n, const double* logp, const double* q,
                             const double* logrho, double eta, double alpha, double* out);
// y[i] += a * x[i]
using AxpyFn = void (*)(std::size_t n, double a, const double* x, double* y);

struct Kernels {
  Isa isa;
  MmdLogitsFn mmd_logits;
  AxpyFn axpy;
};

const Kernels& scalar_kernels();
// Null when the AVX2 variant was not compiled in.
const Kernels* avx2_kernels();

// True when the running CPU supports AVX2.
bool cpu_has_avx2();

// Kernels chosen at first use: AVX2 when available, unless the UE_SIMD
// environment variable is set to "scalar".
const Kernels& active();
// Overrides the runtime choice; throws InvalidArgument if the ISA is unavailable.
void force(Isa isa);

std::string_view isa_name(Isa isa);

}  // namespace ue::simd

#endif  // UE_SIMD_KERNELS_H_
