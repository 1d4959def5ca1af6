#include "iwave/spectral/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "iwave/error.hpp"

namespace iwave {

namespace {

// The FFTW planner is not thread-safe; plan execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int signed_index(int i, int n) { return i < n / 2 ? i : i - n; }

}  // namespace

double Wavevector::norm() const { return std::sqrt(norm2()); }

struct SpectralGrid::Impl {
  int dim = 1;
  int n[2] = {1, 1};
  double len[2] = {1.0, 1.0};
  std::size_t size = 0;
  std::size_t spectral_size = 0;
  std::vector<Wavevector> modes;
  std::vector<double> multiplicity;
  std::vector<unsigned char> dealias;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

SpectralGrid make_grid(int dim, const std::vector<double>& lengths, const std::vector<int>& points) {
  if (dim != 1 && dim != 2) throw Error("grid dimension must be 1 or 2");
  if (static_cast<int>(points.size()) != dim || static_cast<int>(lengths.size()) != dim) {
    throw Error("grid needs one length and one point count per axis");
  }
  auto impl = std::make_shared<SpectralGrid::Impl>();
  impl->dim = dim;
  for (int a = 0; a < dim; ++a) {
    if (points[a] < 8 || points[a] % 2 != 0) {
      std::ostringstream msg;
      msg << "grid axis " << a << ": point count " << points[a] << " must be even and >= 8";
      throw Error(msg.str());
    }
    if (!(lengths[a] > 0.0) || !std::isfinite(lengths[a])) {
      throw Error("grid lengths must be positive and finite");
    }
    impl->n[a] = points[a];
    impl->len[a] = lengths[a];
  }

  const double two_pi = 2.0 * std::numbers::pi;
  if (dim == 1) {
    const int n = impl->n[0];
    impl->size = n;
    impl->spectral_size = n / 2 + 1;
    const double dk = two_pi / impl->len[0];
    for (int j = 0; j <= n / 2; ++j) {
      Wavevector w;
      w.mx = j == n / 2 ? -n / 2 : j;
      w.kx = dk * w.mx;
      w.nyquist = j == n / 2;
      impl->modes.push_back(w);
      impl->multiplicity.push_back((j == 0 || j == n / 2) ? 1.0 : 2.0);
      impl->dealias.push_back(3 * std::abs(w.mx) <= n ? 1 : 0);
    }
  } else {
    const int nx = impl->n[0];
    const int ny = impl->n[1];
    impl->size = static_cast<std::size_t>(nx) * ny;
    impl->spectral_size = static_cast<std::size_t>(nx) * (ny / 2 + 1);
    const double dkx = two_pi / impl->len[0];
    const double dky = two_pi / impl->len[1];
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j <= ny / 2; ++j) {
        Wavevector w;
        w.mx = signed_index(i, nx);
        w.my = j == ny / 2 ? -ny / 2 : j;
        w.kx = dkx * w.mx;
        w.ky = dky * w.my;
        w.nyquist = (i == nx / 2) || (j == ny / 2);
        impl->modes.push_back(w);
        impl->multiplicity.push_back((j == 0 || j == ny / 2) ? 1.0 : 2.0);
        impl->dealias.push_back((3 * std::abs(w.mx) <= nx && 3 * std::abs(w.my) <= ny) ? 1 : 0);
      }
    }
  }

  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    double* rbuf = fftw_alloc_real(impl->size);
    fftw_complex* cbuf = fftw_alloc_complex(impl->spectral_size);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    impl->r2c = fftw_plan_dft_r2c(dim, impl->n, rbuf, cbuf, flags);
    impl->c2r = fftw_plan_dft_c2r(dim, impl->n, cbuf, rbuf, flags);
    fftw_free(rbuf);
    fftw_free(cbuf);
  }
  if (!impl->r2c || !impl->c2r) throw Error("FFTW plan creation failed");

  SpectralGrid g;
  g.impl_ = std::move(impl);
  return g;
}

int SpectralGrid::dim() const { return impl_->dim; }
int SpectralGrid::points(int axis) const { return impl_->n[axis]; }
double SpectralGrid::length(int axis) const { return impl_->len[axis]; }
double SpectralGrid::spacing(int axis) const { return impl_->len[axis] / impl_->n[axis]; }
std::size_t SpectralGrid::size() const { return impl_->size; }
std::size_t SpectralGrid::spectral_size() const { return impl_->spectral_size; }

double SpectralGrid::measure() const {
  double m = 1.0;
  for (int a = 0; a < impl_->dim; ++a) m *= impl_->len[a];
  return m;
}

double SpectralGrid::coordinate(int axis, int index) const { return index * spacing(axis); }

std::vector<double> SpectralGrid::wavenumbers(int axis) const {
  const int n = impl_->n[axis];
  const double dk = 2.0 * std::numbers::pi / impl_->len[axis];
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = dk * (i - n / 2);
  return k;
}

const std::vector<Wavevector>& SpectralGrid::modes() const { return impl_->modes; }
const std::vector<double>& SpectralGrid::multiplicity() const { return impl_->multiplicity; }
const std::vector<unsigned char>& SpectralGrid::dealias_mask() const { return impl_->dealias; }

void SpectralGrid::forward(const double* in, std::complex<double>* out) const {
  // r2c leaves the input intact.
  fftw_execute_dft_r2c(impl_->r2c, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
  const double scale = 1.0 / static_cast<double>(impl_->size);
  for (std::size_t i = 0; i < impl_->spectral_size; ++i) out[i] *= scale;
}

void SpectralGrid::inverse(const std::complex<double>* in, double* out) const {
  std::vector<std::complex<double>> scratch(in, in + impl_->spectral_size);
  fftw_execute_dft_c2r(impl_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

bool SpectralGrid::operator==(const SpectralGrid& other) const {
  if (impl_ == other.impl_) return true;
  if (!impl_ || !other.impl_) return false;
  if (impl_->dim != other.impl_->dim) return false;
  for (int a = 0; a < impl_->dim; ++a) {
    if (impl_->n[a] != other.impl_->n[a] || impl_->len[a] != other.impl_->len[a]) return false;
  }
  return true;
}

}  // namespace iwave
