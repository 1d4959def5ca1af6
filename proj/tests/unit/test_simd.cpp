#include <complex>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "iwave/simd/kernels.hpp"

using namespace iwave::simd;

namespace {

bool bitwise_equal(const double* a, const double* b, std::size_t n) {
  return std::memcmp(a, b, n * sizeof(double)) == 0;
}

std::vector<double> random_doubles(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("dispatch reports a known ISA") {
  const Isa isa = active_isa();
  CHECK((isa == Isa::scalar || isa == Isa::avx2));
  if (isa == Isa::avx2) CHECK(cpu_has_avx2());
  CHECK(!isa_name(isa).empty());
}

TEST_CASE("AVX2 kernels are bit-identical to the scalar reference") {
  const KernelTable* avx = avx2_kernels();
  if (avx == nullptr || !cpu_has_avx2()) {
    MESSAGE("AVX2 unavailable; equivalence not exercised");
    return;
  }
  const KernelTable& ref = scalar_kernels();
  for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 8u, 17u, 64u, 129u, 1000u}) {
    CAPTURE(n);
    const auto a = random_doubles(n, 11 + n);
    const auto b = random_doubles(n, 97 + n);
    const auto m = random_doubles(n, 7 + n);

    std::vector<double> o1(n), o2(n);
    ref.multiply(o1.data(), a.data(), b.data(), n);
    avx->multiply(o2.data(), a.data(), b.data(), n);
    CHECK(bitwise_equal(o1.data(), o2.data(), n));

    std::vector<double> y1 = a, y2 = a;
    ref.axpy(y1.data(), -0.37, b.data(), n);
    avx->axpy(y2.data(), -0.37, b.data(), n);
    CHECK(bitwise_equal(y1.data(), y2.data(), n));

    const auto raw = random_doubles(2 * n, 5 + n);
    std::vector<std::complex<double>> c1(n), c2(n);
    std::memcpy(c1.data(), raw.data(), raw.size() * sizeof(double));
    c2 = c1;
    ref.scale_complex(c1.data(), m.data(), n);
    avx->scale_complex(c2.data(), m.data(), n);
    CHECK(bitwise_equal(reinterpret_cast<double*>(c1.data()), reinterpret_cast<double*>(c2.data()),
                        2 * n));

    const double e1 = ref.weighted_energy(c1.data(), m.data(), n);
    const double e2 = avx->weighted_energy(c1.data(), m.data(), n);
    CHECK(std::memcmp(&e1, &e2, sizeof(double)) == 0);
  }
}

TEST_CASE("weighted energy matches a plain sum") {
  std::vector<std::complex<double>> c = {{1, 2}, {3, -1}, {0.5, 0.5}};
  std::vector<double> m = {1.0, 2.0, 4.0};
  const double expected = 5.0 + 2.0 * 10.0 + 4.0 * 0.5;
  CHECK(weighted_energy(c, m) == doctest::Approx(expected).epsilon(1e-15));
}
