#include "iwave/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define IWAVE_HAVE_AVX2_TU 1
#include <immintrin.h>
#endif

namespace iwave::simd {

#ifdef IWAVE_HAVE_AVX2_TU
namespace {

__attribute__((target("avx2"))) void scale_complex_avx2(std::complex<double>* c, const double* m,
                                                        std::size_t n) {
  auto* p = reinterpret_cast<double*>(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // (m0, m0, m1, m1)
    const __m128d w = _mm_loadu_pd(m + i);
    const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w), 0b01010000);
    const __m256d v = _mm256_loadu_pd(p + 2 * i);
    _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(v, ww));
  }
  for (; i < n; ++i) {
    p[2 * i] *= m[i];
    p[2 * i + 1] *= m[i];
  }
}

__attribute__((target("avx2"))) void multiply_avx2(double* out, const double* a, const double* b,
                                                   std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

__attribute__((target("avx2"))) void axpy_avx2(double* y, double alpha, const double* x,
                                               std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_mul_pd(a, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), t));
  }
  for (; i < n; ++i) {
    const double t = alpha * x[i];
    y[i] = y[i] + t;
  }
}

__attribute__((target("avx2"))) double weighted_energy_avx2(const std::complex<double>* c,
                                                            const double* m, std::size_t n) {
  const auto* p = reinterpret_cast<const double*>(c);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d w = _mm_loadu_pd(m + i);
    const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w), 0b01010000);
    const __m256d v = _mm256_loadu_pd(p + 2 * i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(v, v), ww));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
  for (; i < n; ++i) {
    const double re = p[2 * i];
    const double im = p[2 * i + 1];
    total = total + (re * re + im * im) * m[i];
  }
  return total;
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{scale_complex_avx2, multiply_avx2, axpy_avx2,
                                 weighted_energy_avx2};
  return &table;
}

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

#else

const KernelTable* avx2_kernels() { return nullptr; }
bool cpu_has_avx2() { return false; }

#endif

}  // namespace iwave::simd
