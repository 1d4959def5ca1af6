#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops used by the spectral layer. Each kernel has a
// scalar reference implementation and an AVX2 variant; the variant is picked
// once at startup from the CPU feature flags. Setting IWAVE_SIMD=scalar in the
// environment forces the reference path.
//
// Kernels perform exactly the same IEEE operations in the same order in both
// variants (no FMA contraction), so results are bit-identical.

namespace iwave::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
  // c[i] *= m[i]
  void (*scale_complex)(std::complex<double>* c, const double* m, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*multiply)(double* out, const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double* y, double alpha, const double* x, std::size_t n);
  // sum of m[i] * |c[i]|^2
  double (*weighted_energy)(const std::complex<double>* c, const double* m, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_kernels();

bool cpu_has_avx2();
Isa active_isa();
std::string_view isa_name(Isa isa);
const KernelTable& kernels();

inline void scale_complex(std::span<std::complex<double>> c, std::span<const double> m) {
  kernels().scale_complex(c.data(), m.data(), c.size());
}
inline void multiply(std::span<double> out, std::span<const double> a, std::span<const double> b) {
  kernels().multiply(out.data(), a.data(), b.data(), out.size());
}
inline void axpy(std::span<double> y, double alpha, std::span<const double> x) {
  kernels().axpy(y.data(), alpha, x.data(), y.size());
}
inline double weighted_energy(std::span<const std::complex<double>> c, std::span<const double> m) {
  return kernels().weighted_energy(c.data(), m.data(), c.size());
}

}  // namespace iwave::simd
