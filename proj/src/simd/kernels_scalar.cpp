#include "iwave/simd/kernels.hpp"

namespace iwave::simd {
namespace {

void scale_complex_ref(std::complex<double>* c, const double* m, std::size_t n) {
  auto* p = reinterpret_cast<double*>(c);
  for (std::size_t i = 0; i < n; ++i) {
    p[2 * i] *= m[i];
    p[2 * i + 1] *= m[i];
  }
}

void multiply_ref(double* out, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy_ref(double* y, double alpha, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = alpha * x[i];
    y[i] = y[i] + t;
  }
}

// Four interleaved partial sums so the AVX2 lane layout reproduces it exactly.
double weighted_energy_ref(const std::complex<double>* c, const double* m, std::size_t n) {
  const auto* p = reinterpret_cast<const double*>(c);
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    for (int l = 0; l < 4; ++l) {
      const double v = p[2 * i + l];
      const double w = m[i + l / 2];
      acc[l] = acc[l] + (v * v) * w;
    }
  }
  double total = (acc[0] + acc[2]) + (acc[1] + acc[3]);
  for (; i < n; ++i) {
    const double re = p[2 * i];
    const double im = p[2 * i + 1];
    total = total + (re * re + im * im) * m[i];
  }
  return total;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{scale_complex_ref, multiply_ref, axpy_ref, weighted_energy_ref};
  return table;
}

}  // namespace iwave::simd
