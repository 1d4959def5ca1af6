#include "iwave/spectral/field.hpp"

#include <algorithm>
#include <cmath>

#include "iwave/error.hpp"
#include "iwave/simd/kernels.hpp"

namespace iwave {

void require_same_grid(const SpectralGrid& a, const SpectralGrid& b) {
  if (a != b) throw Error("fields live on different grids");
}

ScalarField::ScalarField(SpectralGrid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

ScalarField::ScalarField(SpectralGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw Error("sample count does not match grid");
}

ScalarField ScalarField::constant(const SpectralGrid& grid, double c) {
  return ScalarField(grid, std::vector<double>(grid.size(), c));
}

ScalarField ScalarField::from_function(const SpectralGrid& grid,
                                       const std::function<double(double, double)>& f) {
  ScalarField out(grid);
  if (grid.dim() == 1) {
    for (int i = 0; i < grid.points(0); ++i) out[i] = f(grid.coordinate(0, i), 0.0);
  } else {
    const int ny = grid.points(1);
    for (int i = 0; i < grid.points(0); ++i) {
      for (int j = 0; j < ny; ++j) {
        out[static_cast<std::size_t>(i) * ny + j] = f(grid.coordinate(0, i), grid.coordinate(1, j));
      }
    }
  }
  return out;
}

double ScalarField::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) { return add_scaled(1.0, o); }
ScalarField& ScalarField::operator-=(const ScalarField& o) { return add_scaled(-1.0, o); }

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

ScalarField& ScalarField::operator+=(double c) {
  for (double& v : values_) v += c;
  return *this;
}

ScalarField& ScalarField::add_scaled(double alpha, const ScalarField& o) {
  require_same_grid(grid_, o.grid_);
  simd::axpy(values_, alpha, o.values_);
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator+(ScalarField a, double c) { return a += c; }
ScalarField operator+(double c, ScalarField a) { return a += c; }

Spectrum::Spectrum(SpectralGrid grid) : grid_(std::move(grid)), coeffs_(grid_.spectral_size()) {}

Spectrum forward(const ScalarField& f) {
  Spectrum s(f.grid());
  f.grid().forward(f.data(), s.coeffs().data());
  return s;
}

ScalarField inverse(const Spectrum& s) {
  ScalarField f(s.grid());
  s.grid().inverse(s.coeffs().data(), f.data());
  return f;
}

VectorField::VectorField(const SpectralGrid& grid) {
  for (int i = 0; i < grid.dim(); ++i) comps_.emplace_back(grid);
}

VectorField::VectorField(std::vector<ScalarField> components) : comps_(std::move(components)) {
  if (comps_.empty()) throw Error("vector field needs at least one component");
  for (const auto& c : comps_) require_same_grid(comps_.front().grid(), c.grid());
  if (static_cast<int>(comps_.size()) != comps_.front().grid().dim()) {
    throw Error("vector field component count must equal grid dimension");
  }
}

VectorField& VectorField::operator+=(const VectorField& o) { return add_scaled(1.0, o); }
VectorField& VectorField::operator-=(const VectorField& o) { return add_scaled(-1.0, o); }

VectorField& VectorField::operator*=(double s) {
  for (auto& c : comps_) c *= s;
  return *this;
}

VectorField& VectorField::add_scaled(double alpha, const VectorField& o) {
  if (o.dim() != dim()) throw Error("vector fields differ in dimension");
  for (int i = 0; i < dim(); ++i) comps_[i].add_scaled(alpha, o.comps_[i]);
  return *this;
}

double VectorField::max_abs() const {
  double m = 0.0;
  for (const auto& c : comps_) m = std::max(m, c.max_abs());
  return m;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator-(VectorField a) { return a *= -1.0; }
VectorField operator*(double s, VectorField a) { return a *= s; }
VectorField operator*(VectorField a, double s) { return a *= s; }

}  // namespace iwave
