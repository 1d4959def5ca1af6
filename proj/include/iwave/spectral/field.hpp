#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "iwave/spectral/grid.hpp"

namespace iwave {

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(SpectralGrid grid);
  ScalarField(SpectralGrid grid, std::vector<double> values);

  static ScalarField constant(const SpectralGrid& grid, double c);
  // f(x, y); y is 0 on one-dimensional grids.
  static ScalarField from_function(const SpectralGrid& grid,
                                   const std::function<double(double, double)>& f);

  const SpectralGrid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  // Zeroth spectral coefficient.
  double mean() const;
  double min() const;
  double max() const;
  double max_abs() const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);
  ScalarField& operator+=(double c);
  // this += alpha * o
  ScalarField& add_scaled(double alpha, const ScalarField& o);

 private:
  SpectralGrid grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a);
ScalarField operator*(double s, ScalarField a);
ScalarField operator*(ScalarField a, double s);
ScalarField operator+(ScalarField a, double c);
ScalarField operator+(double c, ScalarField a);

// Half-spectrum coefficients, normalized so entry 0 is the mean.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(SpectralGrid grid);

  const SpectralGrid& grid() const { return grid_; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<std::complex<double>> coeffs() { return coeffs_; }
  std::span<const std::complex<double>> coeffs() const { return coeffs_; }
  std::complex<double>& operator[](std::size_t i) { return coeffs_[i]; }
  std::complex<double> operator[](std::size_t i) const { return coeffs_[i]; }

 private:
  SpectralGrid grid_;
  std::vector<std::complex<double>> coeffs_;
};

Spectrum forward(const ScalarField& f);
ScalarField inverse(const Spectrum& s);

class VectorField {
 public:
  VectorField() = default;
  // Zero field with grid.dim() components.
  explicit VectorField(const SpectralGrid& grid);
  // Throws iwave::Error if the components live on different grids or their
  // count differs from the grid dimension.
  explicit VectorField(std::vector<ScalarField> components);

  const SpectralGrid& grid() const { return comps_.front().grid(); }
  int dim() const { return static_cast<int>(comps_.size()); }
  ScalarField& operator[](int i) { return comps_[i]; }
  const ScalarField& operator[](int i) const { return comps_[i]; }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
  VectorField& add_scaled(double alpha, const VectorField& o);

  double max_abs() const;

 private:
  std::vector<ScalarField> comps_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator-(VectorField a);
VectorField operator*(double s, VectorField a);
VectorField operator*(VectorField a, double s);

void require_same_grid(const SpectralGrid& a, const SpectralGrid& b);

}  // namespace iwave
