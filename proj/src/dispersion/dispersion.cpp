#include "iwave/dispersion/dispersion.hpp"

#include <cmath>
#include <sstream>

#include "iwave/error.hpp"
#include "iwave/models/simulate.hpp"
#include "iwave/operators/symbols.hpp"
#include "iwave/spectral/ops.hpp"

namespace iwave {

namespace {

DispersionSample sample(double k, double omega2) { return {k, omega2, omega2 >= 0.0}; }

void require_k(double k) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw Error("wavenumber must be finite and nonnegative");
}

}  // namespace

DispersionSample omega2_full(const RegimeParams& p, double k) {
  require_k(k);
  if (k == 0.0) return sample(k, 0.0);
  const double t1 = std::tanh(std::sqrt(p.mu()) * k);
  const double t2 = std::tanh(std::sqrt(p.mu2()) * k);
  return sample(k, (1.0 - p.gamma()) * (k / std::sqrt(p.mu())) * t1 * t2 / (t1 + p.gamma() * t2));
}

DispersionSample omega2_bfd(const RegimeParams& p, const BoussinesqCoeffs& c, double k) {
  require_k(k);
  if (!(p.gamma() > 0.0)) throw Error("B/FD dispersion needs gamma > 0");
  const double g = p.gamma();
  const double mu = p.mu();
  const double k2 = k * k;
  const double bracket = 1.0 - (std::sqrt(mu) / g) * symbols::kcoth(p.mu2(), k) - mu * c.a * k2 +
                         mu * symbols::k2coth2(p.mu2(), k) / (g * g);
  const double num = ((1.0 - g) / g) * k2 * (1.0 - mu * c.c * k2) * bracket;
  return sample(k, num / ((1.0 + mu * c.b * k2) * (1.0 + mu * c.d * k2)));
}

DispersionSample omega2_bb(const RegimeParams& p, const BoussinesqCoeffs& c, double k, bool gamma_factor) {
  require_k(k);
  const double g = p.gamma();
  const double mu = p.mu();
  const double k2 = k * k;
  const double num = k2 * (1.0 / (g + p.delta()) - mu * c.a * k2) * (gamma_factor ? (1.0 - g) * (1.0 - mu * c.c * k2) : 1.0 - g - mu * c.c * k2);
  return sample(k, num / ((1.0 + mu * c.b * k2) * (1.0 + mu * c.d * k2)));
}

DispersionSample omega2_swsw(const RegimeParams& p, double k) {
  require_k(k);
  return sample(k, (1.0 - p.gamma()) * k * k / (p.gamma() + p.delta()));
}

DispersionSample omega2_swfd(const RegimeParams& p, double k) {
  require_k(k);
  if (!(p.gamma() > 0.0)) throw Error("SW/FD dispersion needs gamma > 0");
  const double g = p.gamma();
  const double l = k == 0.0 ? 0.0 : symbols::kcoth(p.mu2(), k);
  return sample(k, ((1.0 - g) / g) * k * k * (1.0 - (std::sqrt(p.mu()) / g) * l));
}

DispersionSample omega2_ilw(const RegimeParams& p, double alpha, double k, bool infinite_depth) {
  require_k(k);
  if (!(p.gamma() > 0.0)) throw Error("ILW dispersion needs gamma > 0");
  const double g = p.gamma();
  const double l = infinite_depth ? k : symbols::kcoth(p.mu2(), k);
  const double s = std::sqrt(p.mu()) / g * l;
  return sample(k, ((1.0 - g) / g) * k * k * (1.0 - (1.0 - alpha) * s) / (1.0 + alpha * s));
}

double omega_rbo(const RegimeParams& p, double alpha, double k) {
  const double g = p.gamma();
  if (!(g > 0.0 && g < 1.0)) throw Error("regularized Benjamin-Ono needs 0 < gamma < 1");
  const double c = std::sqrt((1.0 - g) / g);
  const double smu = std::sqrt(p.mu());
  const double s = smu / (2.0 * g) * c * (1.0 - 2.0 * alpha);
  return (c * k - s * k * std::abs(k)) / (1.0 + smu * (alpha / g) * std::abs(k));
}

DispersionSample omega2_model(const ModelId& model, const RegimeParams& p, double k) {
  switch (model.kind) {
    case ModelKind::FDFD: return omega2_full(p, k);
    case ModelKind::BFD: return omega2_bfd(p, model.coeffs, k);
    case ModelKind::BB: return omega2_bb(p, model.coeffs, k, model.bb_gamma_factor);
    case ModelKind::SWSW: return omega2_swsw(p, k);
    case ModelKind::SWFD: return omega2_swfd(p, k);
    case ModelKind::ILW: return omega2_ilw(p, model.alpha, k, false);
    case ModelKind::BOSYS: return omega2_ilw(p, model.alpha, k, true);
    case ModelKind::RBO: {
      require_k(k);
      const double w = omega_rbo(p, model.alpha, k);
      return sample(k, w * w);
    }
  }
  throw Error("unknown model");
}

std::vector<DispersionSample> dispersion_table(const ModelId& model, const RegimeParams& p, double kmin,
                                               double kmax, int count) {
  if (count < 1) throw Error("dispersion table needs at least one sample");
  if (!(kmin >= 0.0) || !(kmax >= kmin)) throw Error("dispersion table needs 0 <= kmin <= kmax");
  std::vector<DispersionSample> out;
  for (int i = 0; i < count; ++i) {
    const double k = count == 1 ? kmin : kmin + (kmax - kmin) * i / (count - 1);
    out.push_back(omega2_model(model, p, k));
  }
  return out;
}

MeasuredFrequency measured_dispersion(const ModelId& model, const RegimeParams& p, double k,
                                      const MeasureOptions& opt) {
  if (!(k > 0.0)) throw Error("measured dispersion needs k > 0");
  if (opt.dim != 1 && opt.dim != 2) throw Error("measured dispersion supports one or two dimensions");
  SpectralGrid grid;
  ScalarField cosmode;
  ScalarField sinmode;
  if (opt.dim == 1) {
    grid = make_grid(1, {2.0 * M_PI / k}, {opt.points});
    cosmode = ScalarField::from_function(grid, [k](double x, double) { return std::cos(k * x); });
    sinmode = ScalarField::from_function(grid, [k](double x, double) { return std::sin(k * x); });
  } else {
    const double kc = k / std::sqrt(2.0);
    const double len = 2.0 * M_PI / kc;
    grid = make_grid(2, {len, len}, {opt.points, opt.points});
    cosmode = ScalarField::from_function(grid, [kc](double x, double y) { return std::cos(kc * (x + y)); });
    sinmode = ScalarField::from_function(grid, [kc](double x, double y) { return std::sin(kc * (x + y)); });
  }
  validate_model(model, p, grid.dim());
  // Only the excited mode is kept after each step: unrelated modes carry
  // roundoff only, and in ill-posed systems they would grow and swamp the
  // measurement. Harmonics generated by the nonlinearity at this amplitude are
  // below roundoff anyway.
  const int mx0 = 1;
  const int my0 = opt.dim == 2 ? 1 : 0;
  auto keep = [&](const Wavevector& w) {
    return (std::abs(w.mx) == mx0 && std::abs(w.my) == my0) ? 1.0 : 0.0;
  };
  auto filter = [&](ModelState& st) {
    st.zeta = apply_real_symbol(st.zeta, keep);
    if (st.v) *st.v = apply_real_symbol(*st.v, keep);
  };
  auto project = [&](const ScalarField& f, const ScalarField& m) { return 2.0 * product(f, m).mean(); };

  const double amp = opt.amplitude;
  ModelState s = zero_state(model, grid);
  s.zeta = amp * cosmode;

  // Linearized frequency estimate: ω² from two applications for systems, ω
  // from one for the first-order scalar equation.
  const ModelState r1 = rhs(model, p, s);
  double omega2_est;
  if (model.has_velocity()) {
    const ModelState r2 = rhs(model, p, r1);
    omega2_est = -project(r2.zeta, cosmode) / amp;
  } else {
    const double w = project(r1.zeta, sinmode) / amp;
    omega2_est = w * w;
  }

  MeasuredFrequency out;
  if (omega2_est <= 0.0) {
    out.oscillatory = false;
    const double sigma = std::sqrt(std::max(-omega2_est, 1e-300));
    const double t_end = 10.0 / sigma;
    const int steps = 2000;
    const double dt = t_end / steps;
    std::vector<double> ts, ls;
    for (int n = 1; n <= steps; ++n) {
      s = step_rk4(model, p, s, dt);
      filter(s);
      if (n > steps / 2) {
        ts.push_back(n * dt);
        ls.push_back(std::log(std::abs(project(s.zeta, cosmode))));
      }
    }
    double tm = 0, lm = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) tm += ts[i], lm += ls[i];
    tm /= ts.size();
    lm /= ts.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) sxy += (ts[i] - tm) * (ls[i] - lm), sxx += (ts[i] - tm) * (ts[i] - tm);
    out.growth_rate = sxy / sxx;
    return out;
  }

  const double period = 2.0 * M_PI / std::sqrt(omega2_est);
  const double dt = period / opt.steps_per_period;
  const int steps = static_cast<int>(std::ceil(opt.periods * opt.steps_per_period));
  std::vector<double> crossings;
  double prev = project(s.zeta, cosmode);
  for (int n = 1; n <= steps; ++n) {
    s = step_rk4(model, p, s, dt);
    filter(s);
    const double cur = project(s.zeta, cosmode);
    if ((prev > 0.0) != (cur > 0.0) && cur != prev) crossings.push_back((n - 1) * dt + dt * prev / (prev - cur));
    prev = cur;
  }
  out.periods = steps * dt / period;
  out.crossings = static_cast<int>(crossings.size());
  if (crossings.size() < 4) {
    std::ostringstream os;
    os << "measured dispersion: only " << crossings.size() << " zero crossings for " << model_name(model.kind)
       << " at k = " << k;
    throw Error(os.str());
  }
  // t_n = t_0 + n π/ω
  const double nn = static_cast<double>(crossings.size());
  double nm = (nn - 1.0) / 2.0, tm = 0.0;
  for (double t : crossings) tm += t;
  tm /= nn;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    sxy += (i - nm) * (crossings[i] - tm);
    sxx += (i - nm) * (i - nm);
  }
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    const double r = crossings[i] - (tm + slope * (i - nm));
    rss += r * r;
  }
  const double slope_se = std::sqrt(rss / std::max(1.0, nn - 2.0) / sxx);
  out.omega = M_PI / slope;
  out.uncertainty = slope_se / slope;
  return out;
}

}  // namespace iwave
