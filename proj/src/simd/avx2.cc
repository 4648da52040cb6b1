#include <immintrin.h>

#include "ue/simd/kernels.h"

namespace ue::simd {

namespace {

void mmd_logits_avx2(std::size_t n, const double* logp, const double* q, const double* logrho,
                     double eta, double alpha, double* out) {
  const double pull = eta * alpha;
  const double scale = 1.0 / (1.0 + alpha * eta);
  const __m256d veta = _mm256_set1_pd(eta);
  const __m256d vpull = _mm256_set1_pd(pull);
  const __m256d vscale = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_add_pd(_mm256_loadu_pd(logp + i),
                                _mm256_mul_pd(veta, _mm256_loadu_pd(q + i)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(vpull, _mm256_loadu_pd(logrho + i)));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(acc, vscale));
  }
  for (; i < n; ++i) out[i] = (logp[i] + eta * q[i] + pull * logrho[i]) * scale;
}

void axpy_avx2(std::size_t n, double a, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

const Kernels kAvx2{Isa::kAvx2, &mmd_logits_avx2, &axpy_avx2};

}  // namespace

const Kernels* avx2_kernels() { return &kAvx2; }

}  // namespace ue::simd
