#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>

#include "iwave/models/simulate.hpp"
#include "iwave/spectral/field.hpp"
#include "iwave/spectral/ops.hpp"

namespace iwave::testing {

inline ScalarField random_field(const SpectralGrid& g, int max_mode, double amplitude, unsigned seed) {
  return random_band_limited(g, max_mode, amplitude, seed);
}

inline double max_diff(const ScalarField& a, const ScalarField& b) { return (a - b).max_abs(); }
inline double max_diff(const VectorField& a, const VectorField& b) { return (a - b).max_abs(); }

// Finite Fourier series Σ c_m e^{i k_m·x} held as explicit coefficients.
// Products are full convolutions and evaluation sums the modes pointwise, so
// results never pass through the FFT machinery under test.
class ModeSeries {
 public:
  using Index = std::array<int, 2>;
  using Cplx = std::complex<double>;

  ModeSeries(double lx, double ly = 1.0) : lx_(lx), ly_(ly) {}

  // Adds a cos(k·x) + b sin(k·x) for the integer mode (mx, my).
  ModeSeries& add_real(int mx, int my, double a, double b) {
    if (mx == 0 && my == 0) {
      c_[{0, 0}] += a;
      return *this;
    }
    c_[{mx, my}] += Cplx(a, -b) / 2.0;
    c_[{-mx, -my}] += Cplx(a, b) / 2.0;
    return *this;
  }

  std::array<double, 2> k(const Index& m) const { return {2.0 * M_PI / lx_ * m[0], 2.0 * M_PI / ly_ * m[1]}; }

  // Multiplies each coefficient by sym(kx, ky).
  ModeSeries apply(const std::function<Cplx(double, double)>& sym) const {
    ModeSeries out(lx_, ly_);
    for (const auto& [m, c] : c_) {
      const auto kk = k(m);
      out.c_[m] = c * sym(kk[0], kk[1]);
    }
    return out;
  }
  ModeSeries dx() const { return apply([](double kx, double) { return Cplx(0.0, kx); }); }
  ModeSeries dy() const { return apply([](double, double ky) { return Cplx(0.0, ky); }); }

  ModeSeries operator*(const ModeSeries& o) const {
    ModeSeries out(lx_, ly_);
    for (const auto& [m1, c1] : c_)
      for (const auto& [m2, c2] : o.c_) out.c_[{m1[0] + m2[0], m1[1] + m2[1]}] += c1 * c2;
    return out;
  }
  ModeSeries operator+(const ModeSeries& o) const {
    ModeSeries out = *this;
    for (const auto& [m, c] : o.c_) out.c_[m] += c;
    return out;
  }
  ModeSeries operator-(const ModeSeries& o) const { return *this + o.scaled(-1.0); }
  ModeSeries scaled(double s) const {
    ModeSeries out = *this;
    for (auto& [m, c] : out.c_) c *= s;
    return out;
  }

  ScalarField eval(const SpectralGrid& g) const {
    return ScalarField::from_function(g, [&](double x, double y) {
      Cplx sum = 0.0;
      for (const auto& [m, c] : c_) {
        const auto kk = k(m);
        sum += c * std::exp(Cplx(0.0, kk[0] * x + kk[1] * y));
      }
      return sum.real();
    });
  }

 private:
  double lx_, ly_;
  std::map<Index, Cplx> c_;
};

}  // namespace iwave::testing
