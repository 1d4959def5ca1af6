#include "iwave/operators/operators.hpp"

#include <cmath>
#include <sstream>

#include "iwave/error.hpp"
#include "iwave/operators/symbols.hpp"
#include "iwave/spectral/ops.hpp"

namespace iwave {

ScalarField t_mu(double mu, const ScalarField& f) {
  return apply_real_symbol(f, [mu](const Wavevector& k) { return symbols::tanh_mu(mu, k.norm()); });
}

ScalarField lambda_coth(double mu2, const ScalarField& f) {
  return apply_real_symbol(f, [mu2](const Wavevector& k) { return symbols::kcoth(mu2, k.norm()); });
}

VectorField lambda_coth(double mu2, const VectorField& f) {
  return apply_real_symbol(f, [mu2](const Wavevector& k) { return symbols::kcoth(mu2, k.norm()); });
}

VectorField projector_pi(const VectorField& v) {
  const SpectralGrid& g = v.grid();
  const auto& modes = g.modes();
  std::vector<Spectrum> in;
  for (int a = 0; a < v.dim(); ++a) in.push_back(forward(v[a]));
  std::vector<Spectrum> out(v.dim(), Spectrum(g));
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const Wavevector& k = modes[i];
    const double k2 = k.norm2();
    if (k.nyquist || k2 == 0.0) continue;
    if (v.dim() == 1) {
      out[0][i] = in[0][i];
    } else {
      const std::complex<double> kv = (k.kx * in[0][i] + k.ky * in[1][i]) / k2;
      out[0][i] = k.kx * kv;
      out[1][i] = k.ky * kv;
    }
  }
  std::vector<ScalarField> comps;
  for (auto& s : out) comps.push_back(inverse(s));
  return VectorField(std::move(comps));
}

ScalarField t0_mu(double mu, const ScalarField& f) {
  return apply_real_symbol(f, [mu](const Wavevector& k) { return symbols::t0(mu, k.norm()); });
}

VectorField t0_mu(double mu, const VectorField& w) {
  return apply_real_symbol(w, [mu](const Wavevector& k) { return symbols::t0(mu, k.norm()); });
}

VectorField t1_mu(double mu, const ScalarField& zeta, const VectorField& w) {
  const ScalarField inner = t0_mu(mu, div(w));
  return -grad(t0_mu(mu, product_dealiased(zeta, inner)));
}

QFrakResult q_frak(const ScalarField& a, const VectorField& w, const QFrakOptions& opt) {
  const double sup = a.max_abs();
  if (sup > opt.sup_guard) {
    std::ostringstream os;
    os << "Q operator: sup|eps2*zeta| = " << sup << " exceeds the contraction guard " << opt.sup_guard;
    throw ContractionFailure(os.str(), sup);
  }
  VectorField term = projector_pi(w);
  VectorField sum = term;
  const double scale = std::max(1.0, l2_norm(term));
  double prev = l2_norm(term);
  int stalls = 0;
  QFrakResult r{sum, 1, prev};
  if (prev < opt.tol * scale) return r;
  for (int n = 1; n < opt.max_terms; ++n) {
    term = -projector_pi(product(a, term));
    const double norm = l2_norm(term);
    sum += term;
    r.terms = n + 1;
    r.last_term_norm = norm;
    if (norm < opt.tol * scale) {
      r.value = std::move(sum);
      return r;
    }
    stalls = norm >= prev ? stalls + 1 : 0;
    if (stalls >= 3) {
      std::ostringstream os;
      os << "Q operator: series terms stopped decreasing after " << r.terms
         << " terms (sup|eps2*zeta| = " << sup << ")";
      throw ContractionFailure(os.str(), sup);
    }
    prev = norm;
  }
  std::ostringstream os;
  os << "Q operator: no convergence within " << opt.max_terms << " terms (sup|eps2*zeta| = " << sup
     << ", last term " << r.last_term_norm << ")";
  throw ContractionFailure(os.str(), sup);
}

VectorField q_frak_closed_1d(const ScalarField& a, const VectorField& w) {
  if (w.dim() != 1) throw Error("closed form of the Q operator exists only in one dimension");
  const ScalarField pw = projector_pi(w)[0];
  ScalarField inv_h(a.grid());
  ScalarField w_over_h(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) {
    inv_h[i] = 1.0 / (1.0 + a[i]);
    w_over_h[i] = pw[i] * inv_h[i];
  }
  const double c = -w_over_h.mean() / inv_h.mean();
  return VectorField({w_over_h + c * inv_h});
}

VectorField bilinear_b(const RegimeParams& p, const ScalarField& zeta, const VectorField& grad_psi1) {
  const double mu = p.mu();
  const double mu2 = p.mu2();
  const double smu2 = std::sqrt(mu2);
  auto one_plus_ratio = [mu, mu2](const Wavevector& k) {
    return 1.0 + symbols::tanh_ratio(mu, mu2, k.norm());
  };
  const VectorField first =
      lambda_coth(mu2, projector_pi(product_dealiased(zeta, apply_real_symbol(grad_psi1, one_plus_ratio))));
  const ScalarField lap_psi = div(grad_psi1);
  const ScalarField inner = product_dealiased(zeta, t0_mu(mu, lap_psi));
  const VectorField second = grad(apply_real_symbol(inner, one_plus_ratio));
  return smu2 * (first + second);
}

VectorField expand_v_small_amplitude(const RegimeParams& p, const ScalarField& zeta,
                                     const ScalarField& psi1) {
  const VectorField gpsi = grad(psi1);
  VectorField v = t0_mu(p.mu(), gpsi);
  const VectorField corr = t1_mu(p.mu(), zeta, gpsi) - product_dealiased(zeta, gpsi);
  return v.add_scaled(p.eps() * std::sqrt(p.mu()), corr);
}

VectorField expand_v_shallow(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                             int order) {
  if (order != 1 && order != 2) throw Error("shallow expansion order must be 1 or 2");
  const VectorField gpsi = grad(psi1);
  const double mu = p.mu();
  VectorField v = mu * (gpsi - p.eps() * product_dealiased(zeta, gpsi));
  if (order == 2) v.add_scaled(mu * mu / 3.0, laplacian(gpsi));
  return v;
}

const char* regime_name(HRegime r) {
  switch (r) {
    case HRegime::FDFD: return "FDFD";
    case HRegime::BFD: return "BFD";
    case HRegime::BB: return "BB";
    case HRegime::SWSW: return "SWSW";
    case HRegime::SWSA: return "SWSA";
    case HRegime::ILW: return "ILW";
    case HRegime::BO: return "BO";
  }
  return "?";
}

VectorField expand_h(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                     HRegime regime, const QFrakOptions& qopt) {
  const VectorField gpsi = grad(psi1);
  const double mu = p.mu();
  const double mu2 = p.mu2();
  const double delta = p.delta();
  const double smu = std::sqrt(mu);
  switch (regime) {
    case HRegime::FDFD: {
      VectorField h = -apply_real_symbol(
          gpsi, [mu, mu2](const Wavevector& k) { return symbols::tanh_ratio(mu, mu2, k.norm()); });
      return h.add_scaled(p.eps2(), bilinear_b(p, zeta, gpsi));
    }
    case HRegime::BFD: {
      VectorField inner = -gpsi;
      inner.add_scaled(-mu / 3.0, laplacian(gpsi));
      inner.add_scaled(p.eps(), projector_pi(product_dealiased(zeta, gpsi)));
      return smu * lambda_coth(mu2, inner);
    }
    case HRegime::BB: {
      VectorField h = -delta * gpsi;
      h.add_scaled(-(delta / 3.0) * mu * (1.0 - 1.0 / (delta * delta)), laplacian(gpsi));
      return h.add_scaled(p.eps2() * (1.0 + delta), projector_pi(product_dealiased(zeta, gpsi)));
    }
    case HRegime::SWSW: {
      const VectorField h1g = product_dealiased(upper_thickness(p, zeta), gpsi);
      return -delta * q_frak(p.eps2() * zeta, h1g, qopt).value;
    }
    case HRegime::SWSA: {
      const VectorField h1g = product_dealiased(upper_thickness(p, zeta), gpsi);
      return -smu * lambda_coth(mu2, projector_pi(h1g));
    }
    case HRegime::ILW:
      return -smu * lambda_coth(mu2, gpsi);
    case HRegime::BO:
      return -smu * apply_real_symbol(gpsi, [](const Wavevector& k) { return k.norm(); });
  }
  throw Error("unknown regime");
}

}  // namespace iwave
