#include "ue/simd/kernels.h"

namespace ue::simd {

namespace {

void mmd_logits_scalar(std::size_t n, const double* logp, const double* q, const double* logrho,
                       double eta, double alpha, double* out) {
  const double pull = eta * alpha;
  const double scale = 1.0 / (1.0 + alpha * eta);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (logp[i] + eta * q[i] + pull * logrho[i]) * scale;
  }
}

void axpy_scalar(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels kernels{Isa::kScalar, &mmd_logits_scalar, &axpy_scalar};
  return kernels;
}

}  // namespace ue::simd
