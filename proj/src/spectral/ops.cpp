#include "iwave/spectral/ops.hpp"

#include <cmath>
#include <sstream>

#include "iwave/error.hpp"
#include "iwave/simd/kernels.hpp"

namespace iwave {

namespace {

void check_finite(double v, const Wavevector& k) {
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "symbol is not finite at mode (" << k.kx << ", " << k.ky << ")";
    throw Error(msg.str());
  }
}

}  // namespace

ScalarField apply_symbol(const ScalarField& f, const Symbol& m) {
  Spectrum s = forward(f);
  const auto& modes = f.grid().modes();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const std::complex<double> w = m(modes[i]);
    check_finite(w.real(), modes[i]);
    check_finite(w.imag(), modes[i]);
    s[i] *= w;
  }
  return inverse(s);
}

std::vector<double> tabulate(const SpectralGrid& grid, const RealSymbol& m) {
  const auto& modes = grid.modes();
  std::vector<double> w(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    w[i] = m(modes[i]);
    check_finite(w[i], modes[i]);
  }
  return w;
}

ScalarField apply_multiplier(const ScalarField& f, std::span<const double> weights) {
  if (weights.size() != f.grid().spectral_size()) throw Error("multiplier size mismatch");
  Spectrum s = forward(f);
  simd::scale_complex(s.coeffs(), weights);
  return inverse(s);
}

VectorField apply_multiplier(const VectorField& f, std::span<const double> weights) {
  std::vector<ScalarField> out;
  for (int i = 0; i < f.dim(); ++i) out.push_back(apply_multiplier(f[i], weights));
  return VectorField(std::move(out));
}

ScalarField apply_real_symbol(const ScalarField& f, const RealSymbol& m) {
  return apply_multiplier(f, tabulate(f.grid(), m));
}

VectorField apply_real_symbol(const VectorField& f, const RealSymbol& m) {
  return apply_multiplier(f, tabulate(f.grid(), m));
}

ScalarField partial(const ScalarField& f, int axis) {
  if (axis < 0 || axis >= f.grid().dim()) throw Error("derivative axis out of range");
  Spectrum s = forward(f);
  const auto& modes = f.grid().modes();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double k = modes[i].nyquist ? 0.0 : (axis == 0 ? modes[i].kx : modes[i].ky);
    s[i] *= std::complex<double>(0.0, k);
  }
  return inverse(s);
}

VectorField grad(const ScalarField& f) {
  Spectrum s = forward(f);
  const auto& modes = f.grid().modes();
  std::vector<ScalarField> out;
  for (int axis = 0; axis < f.grid().dim(); ++axis) {
    Spectrum d(f.grid());
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const double k = modes[i].nyquist ? 0.0 : (axis == 0 ? modes[i].kx : modes[i].ky);
      d[i] = s[i] * std::complex<double>(0.0, k);
    }
    out.push_back(inverse(d));
  }
  return VectorField(std::move(out));
}

ScalarField div(const VectorField& v) {
  const SpectralGrid& g = v.grid();
  const auto& modes = g.modes();
  Spectrum acc(g);
  for (int axis = 0; axis < v.dim(); ++axis) {
    Spectrum s = forward(v[axis]);
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const double k = modes[i].nyquist ? 0.0 : (axis == 0 ? modes[i].kx : modes[i].ky);
      acc[i] += s[i] * std::complex<double>(0.0, k);
    }
  }
  return inverse(acc);
}

ScalarField laplacian(const ScalarField& f) {
  return apply_real_symbol(f, [](const Wavevector& k) { return k.nyquist ? 0.0 : -k.norm2(); });
}

VectorField laplacian(const VectorField& v) {
  return apply_real_symbol(v, [](const Wavevector& k) { return k.nyquist ? 0.0 : -k.norm2(); });
}

AnyField differential(const AnyField& f, DiffKind kind) {
  switch (kind) {
    case DiffKind::grad:
      if (const auto* s = std::get_if<ScalarField>(&f)) return grad(*s);
      throw Error("grad expects a scalar field");
    case DiffKind::div:
      if (const auto* v = std::get_if<VectorField>(&f)) return div(*v);
      throw Error("div expects a vector field");
    case DiffKind::laplacian:
      if (const auto* s = std::get_if<ScalarField>(&f)) return laplacian(*s);
      return laplacian(std::get<VectorField>(f));
  }
  throw Error("unknown differential kind");
}

ScalarField product(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid(), g.grid());
  ScalarField out(f.grid());
  simd::multiply(out.values(), f.values(), g.values());
  return out;
}

VectorField product(const ScalarField& f, const VectorField& v) {
  std::vector<ScalarField> out;
  for (int i = 0; i < v.dim(); ++i) out.push_back(product(f, v[i]));
  return VectorField(std::move(out));
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  if (a.dim() != b.dim()) throw Error("dot: dimension mismatch");
  ScalarField out = product(a[0], b[0]);
  for (int i = 1; i < a.dim(); ++i) out += product(a[i], b[i]);
  return out;
}

ScalarField truncate_two_thirds(const ScalarField& f) {
  Spectrum s = forward(f);
  const auto& mask = f.grid().dealias_mask();
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) s[i] = 0.0;
  }
  return inverse(s);
}

VectorField truncate_two_thirds(const VectorField& v) {
  std::vector<ScalarField> out;
  for (int i = 0; i < v.dim(); ++i) out.push_back(truncate_two_thirds(v[i]));
  return VectorField(std::move(out));
}

ScalarField product_dealiased(const ScalarField& f, const ScalarField& g) {
  return truncate_two_thirds(product(truncate_two_thirds(f), truncate_two_thirds(g)));
}

VectorField product_dealiased(const ScalarField& f, const VectorField& v) {
  const ScalarField ft = truncate_two_thirds(f);
  std::vector<ScalarField> out;
  for (int i = 0; i < v.dim(); ++i) {
    out.push_back(truncate_two_thirds(product(ft, truncate_two_thirds(v[i]))));
  }
  return VectorField(std::move(out));
}

ScalarField dot_dealiased(const VectorField& a, const VectorField& b) {
  if (a.dim() != b.dim()) throw Error("dot: dimension mismatch");
  ScalarField out = product(truncate_two_thirds(a[0]), truncate_two_thirds(b[0]));
  for (int i = 1; i < a.dim(); ++i) {
    out += product(truncate_two_thirds(a[i]), truncate_two_thirds(b[i]));
  }
  return truncate_two_thirds(out);
}

double sobolev_norm(const ScalarField& f, double s) {
  if (s < 0.0) throw Error("sobolev index must be nonnegative");
  const SpectralGrid& g = f.grid();
  const auto& modes = g.modes();
  const auto& mult = g.multiplicity();
  std::vector<double> w(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    w[i] = mult[i] * (s == 0.0 ? 1.0 : std::pow(1.0 + modes[i].norm2(), s));
  }
  const Spectrum sp = forward(f);
  return std::sqrt(g.measure() * simd::weighted_energy(sp.coeffs(), w));
}

double sobolev_norm(const VectorField& v, double s) {
  double acc = 0.0;
  for (int i = 0; i < v.dim(); ++i) {
    const double n = sobolev_norm(v[i], s);
    acc += n * n;
  }
  return std::sqrt(acc);
}

double l2_norm(const ScalarField& f) { return sobolev_norm(f, 0.0); }
double l2_norm(const VectorField& v) { return sobolev_norm(v, 0.0); }

double quadrature_l2(const ScalarField& f) {
  double acc = 0.0;
  for (double x : f.values()) acc += x * x;
  return std::sqrt(f.grid().measure() * acc / static_cast<double>(f.size()));
}

double sup_norm(const ScalarField& f) { return f.max_abs(); }
double sup_norm(const VectorField& v) { return v.max_abs(); }

double integrate(const ScalarField& f) { return f.mean() * f.grid().measure(); }

ScalarField remove_mean(const ScalarField& f) { return f + (-f.mean()); }

}  // namespace iwave
