#pragma once

#include <complex>
#include <functional>
#include <variant>

#include "iwave/spectral/field.hpp"

namespace iwave {

using Symbol = std::function<std::complex<double>(const Wavevector&)>;
using RealSymbol = std::function<double(const Wavevector&)>;

// Multiplies every half-spectrum coefficient by m(k). Throws iwave::Error if
// m is not finite at some mode. The symbol must respect Hermitian symmetry
// (even-real or odd-imaginary); odd symbols should vanish where k.nyquist.
ScalarField apply_symbol(const ScalarField& f, const Symbol& m);

// Real symbol fast path. Same contract as apply_symbol.
ScalarField apply_real_symbol(const ScalarField& f, const RealSymbol& m);
VectorField apply_real_symbol(const VectorField& f, const RealSymbol& m);

// Multiplies the spectrum by precomputed real weights (one per half-spectrum
// entry, in grid.modes() order).
ScalarField apply_multiplier(const ScalarField& f, std::span<const double> weights);
VectorField apply_multiplier(const VectorField& f, std::span<const double> weights);
std::vector<double> tabulate(const SpectralGrid& grid, const RealSymbol& m);

// Spectral derivatives. Nyquist modes are zeroed so that div(grad f) and
// laplacian(f) agree.
ScalarField partial(const ScalarField& f, int axis);
VectorField grad(const ScalarField& f);
ScalarField div(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);

enum class DiffKind { grad, div, laplacian };
using AnyField = std::variant<ScalarField, VectorField>;
// Rank-checked entry point; throws iwave::Error when the input rank does not
// fit the requested operator.
AnyField differential(const AnyField& f, DiffKind kind);

// Pointwise physical-space products, no dealiasing.
ScalarField product(const ScalarField& f, const ScalarField& g);
VectorField product(const ScalarField& f, const VectorField& v);
ScalarField dot(const VectorField& a, const VectorField& b);

// Zeroes every mode outside the 2/3 band.
ScalarField truncate_two_thirds(const ScalarField& f);
VectorField truncate_two_thirds(const VectorField& v);

// Pointwise product with both inputs and the output truncated to the 2/3 band.
ScalarField product_dealiased(const ScalarField& f, const ScalarField& g);
VectorField product_dealiased(const ScalarField& f, const VectorField& v);
ScalarField dot_dealiased(const VectorField& a, const VectorField& b);

// (measure * Σ_k (1+|k|²)^s |f̂_k|²)^{1/2} over the full spectrum; s=0 is the
// quadrature L² norm.
double sobolev_norm(const ScalarField& f, double s);
double sobolev_norm(const VectorField& v, double s);
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& v);
// sqrt(measure * mean(f²)) from samples.
double quadrature_l2(const ScalarField& f);
double sup_norm(const ScalarField& f);
double sup_norm(const VectorField& v);
// Quadrature of f over the torus.
double integrate(const ScalarField& f);

// Removes the mean.
ScalarField remove_mean(const ScalarField& f);

}  // namespace iwave
