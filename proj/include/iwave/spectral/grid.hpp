#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace iwave {

// One entry of the half spectrum. Integer mode indices are signed; the
// Nyquist entry along an axis carries index -N/2 and the flag below, and every
// odd (derivative-type) multiplier must vanish there.
struct Wavevector {
  double kx = 0.0;
  double ky = 0.0;
  int mx = 0;
  int my = 0;
  bool nyquist = false;

  double norm2() const { return kx * kx + ky * ky; }
  double norm() const;
};

// Periodic tensor grid on [0, L_x) x [0, L_y). Storage is row-major with axis
// 0 = x, so in two dimensions the sample (i, j) lives at i * ny + j. The half
// spectrum follows FFTW's r2c layout: the last axis keeps N/2 + 1 entries.
//
// Copies share the precomputed wavevectors and transform plans.
class SpectralGrid {
 public:
  SpectralGrid() = default;

  int dim() const;
  int points(int axis) const;
  double length(int axis) const;
  double spacing(int axis) const;
  // Physical sample count.
  std::size_t size() const;
  // Half-spectrum entry count.
  std::size_t spectral_size() const;
  // Area (or length) of the torus.
  double measure() const;

  double coordinate(int axis, int index) const;

  // Per-axis wavenumbers, ascending: -N/2 .. N/2-1 scaled by 2π/L.
  std::vector<double> wavenumbers(int axis) const;

  const std::vector<Wavevector>& modes() const;
  // 1 for self-conjugate half-spectrum entries, 2 otherwise.
  const std::vector<double>& multiplicity() const;
  // True where every |index_i| <= N_i/3 (2/3 rule).
  const std::vector<unsigned char>& dealias_mask() const;

  // Forward transform normalized by 1/N so entry 0 is the mean.
  void forward(const double* in, std::complex<double>* out) const;
  // Inverse transform. `in` is not modified.
  void inverse(const std::complex<double>* in, double* out) const;

  bool operator==(const SpectralGrid& other) const;
  bool operator!=(const SpectralGrid& other) const { return !(*this == other); }

  bool valid() const { return static_cast<bool>(impl_); }

  struct Impl;

 private:
  friend SpectralGrid make_grid(int dim, const std::vector<double>& lengths,
                                const std::vector<int>& points);
  std::shared_ptr<const Impl> impl_;
};

// Throws iwave::Error for dim outside {1,2} or point counts that are odd or
// below 8.
SpectralGrid make_grid(int dim, const std::vector<double>& lengths, const std::vector<int>& points);

}  // namespace iwave
