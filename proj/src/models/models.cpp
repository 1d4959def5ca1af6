#include "iwave/models/models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "iwave/error.hpp"
#include "iwave/operators/symbols.hpp"
#include "iwave/spectral/ops.hpp"

namespace iwave {

namespace {

void require_generators(double alpha1, double alpha2, double beta) {
  if (!(alpha1 >= 0.0) || !(beta >= 0.0) || !(alpha2 <= 1.0)) {
    std::ostringstream os;
    os << "generator constraints violated (need alpha1 >= 0, beta >= 0, alpha2 <= 1; got alpha1=" << alpha1
       << ", alpha2=" << alpha2 << ", beta=" << beta << ")";
    throw Error(os.str());
  }
}

// 1/(1 + μ m |k|²)
ScalarField invert_helmholtz(double mu, double m, const ScalarField& f) {
  if (m == 0.0) return f;
  return apply_real_symbol(f, [mu, m](const Wavevector& k) { return 1.0 / (1.0 + mu * m * k.norm2()); });
}

VectorField invert_helmholtz(double mu, double m, const VectorField& f) {
  if (m == 0.0) return f;
  return apply_real_symbol(f, [mu, m](const Wavevector& k) { return 1.0 / (1.0 + mu * m * k.norm2()); });
}

ScalarField apply_helmholtz(double mu, double m, const ScalarField& f) {
  if (m == 0.0) return f;
  return apply_real_symbol(f, [mu, m](const Wavevector& k) { return 1.0 + mu * m * k.norm2(); });
}

VectorField apply_helmholtz(double mu, double m, const VectorField& f) {
  if (m == 0.0) return f;
  return apply_real_symbol(f, [mu, m](const Wavevector& k) { return 1.0 + mu * m * k.norm2(); });
}

// Prefactor 1 + √μ(α/γ)L of the ILW/BO equations, L = |D|coth(√μ₂|D|) or |D|.
double ilw_prefactor(const RegimeParams& p, double alpha, bool infinite_depth, double kn) {
  const double l = infinite_depth ? kn : symbols::kcoth(p.mu2(), kn);
  return 1.0 + std::sqrt(p.mu()) * (alpha / p.gamma()) * l;
}

const VectorField& velocity(const ModelState& s) {
  if (!s.v) throw Error("model state has no velocity component");
  return *s.v;
}

ModelState make_state(ScalarField zeta, VectorField v) { return ModelState{std::move(zeta), std::move(v)}; }

}  // namespace

BoussinesqCoeffs coeffs_bfd(double alpha1, double alpha2, double beta) {
  require_generators(alpha1, alpha2, beta);
  BoussinesqCoeffs c;
  c.a = (1.0 - alpha1 - 3.0 * beta) / 3.0;
  c.b = alpha1 / 3.0;
  c.c = beta * alpha2;
  c.d = beta * (1.0 - alpha2);
  c.alpha1 = alpha1;
  c.alpha2 = alpha2;
  c.beta = beta;
  return c;
}

BoussinesqCoeffs coeffs_bb(double gamma, double delta, double alpha1, double alpha2, double beta) {
  if (!(delta > 0.0)) throw Error("B/B coefficients need delta > 0");
  if (!(gamma >= 0.0)) throw Error("B/B coefficients need gamma >= 0");
  require_generators(alpha1, alpha2, beta);
  const double gd = gamma + delta;
  BoussinesqCoeffs c;
  c.a = ((1.0 - alpha1) * (1.0 + gamma * delta) - 3.0 * delta * beta * gd) / (3.0 * delta * gd * gd);
  c.b = alpha1 * (1.0 + gamma * delta) / (3.0 * delta * gd);
  c.c = beta * alpha2;
  c.d = beta * (1.0 - alpha2);
  c.alpha1 = alpha1;
  c.alpha2 = alpha2;
  c.beta = beta;
  return c;
}

const char* model_name(ModelKind k) {
  switch (k) {
    case ModelKind::FDFD: return "fdfd";
    case ModelKind::BFD: return "bfd";
    case ModelKind::BB: return "bb";
    case ModelKind::SWSW: return "swsw";
    case ModelKind::SWFD: return "swfd";
    case ModelKind::ILW: return "ilw";
    case ModelKind::BOSYS: return "bosys";
    case ModelKind::RBO: return "rbo";
  }
  return "?";
}

ModelKind parse_model(const std::string& name) {
  std::string s;
  for (char ch : name) {
    if (ch == '/' || ch == '-' || ch == '_') continue;
    s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  for (ModelKind k : {ModelKind::FDFD, ModelKind::BFD, ModelKind::BB, ModelKind::SWSW, ModelKind::SWFD,
                      ModelKind::ILW, ModelKind::BOSYS, ModelKind::RBO}) {
    if (s == model_name(k)) return k;
  }
  if (s == "bo") return ModelKind::BOSYS;
  throw Error("unknown model '" + name + "' (expected fdfd, bfd, bb, swsw, swfd, ilw, bosys or rbo)");
}

std::string ModelId::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << model_name(kind);
  switch (kind) {
    case ModelKind::ILW:
    case ModelKind::BOSYS:
    case ModelKind::RBO: os << " alpha=" << alpha; break;
    case ModelKind::BFD:
    case ModelKind::BB:
      if (kind == ModelKind::BB && bb_gamma_factor) os << " gamma_factor=1";
      os << " alpha1=" << coeffs.alpha1 << " alpha2=" << coeffs.alpha2 << " beta=" << coeffs.beta
         << " a=" << coeffs.a << " b=" << coeffs.b << " c=" << coeffs.c << " d=" << coeffs.d;
      break;
    default: break;
  }
  return os.str();
}

ModelState& ModelState::operator+=(const ModelState& o) { return add_scaled(1.0, o); }

ModelState& ModelState::add_scaled(double alpha, const ModelState& o) {
  zeta.add_scaled(alpha, o.zeta);
  if (v.has_value() != o.v.has_value()) throw Error("model states have different shapes");
  if (v) v->add_scaled(alpha, *o.v);
  return *this;
}

ModelState& ModelState::operator*=(double s) {
  zeta *= s;
  if (v) *v *= s;
  return *this;
}

double ModelState::max_abs() const {
  double m = zeta.max_abs();
  if (v) m = std::max(m, v->max_abs());
  return m;
}

bool ModelState::finite() const {
  auto ok = [](const ScalarField& f) {
    for (double x : f.values())
      if (!std::isfinite(x)) return false;
    return true;
  };
  if (!ok(zeta)) return false;
  if (v)
    for (int a = 0; a < v->dim(); ++a)
      if (!ok((*v)[a])) return false;
  return true;
}

ModelState zero_state(const ModelId& model, const SpectralGrid& grid) {
  ModelState s{ScalarField(grid), std::nullopt};
  if (model.has_velocity()) s.v = VectorField(grid);
  return s;
}

VectorField to_v_beta(double mu, double beta, const VectorField& v) { return invert_helmholtz(mu, beta, v); }

VectorField from_v_beta(double mu, double beta, const VectorField& v_beta) {
  return apply_helmholtz(mu, beta, v_beta);
}

ModelState rhs_fdfd(const RegimeParams& p, const ModelState& s) {
  const VectorField& v = velocity(s);
  const double mu = p.mu();
  const double mu2 = p.mu2();
  const double gamma = p.gamma();
  const double delta = p.delta();
  const double eps = p.eps();
  const double smu = std::sqrt(mu);
  // K = T₂/(γT₂+T₁), E = T₁/(γT₂+T₁), S/|D| = T₁K/|D|.
  auto k_sym = [=](const Wavevector& k) {
    const double kn = k.norm();
    if (kn == 0.0) return 1.0 / (gamma + delta);
    const double t1 = std::tanh(std::sqrt(mu) * kn);
    const double t2 = std::tanh(std::sqrt(mu2) * kn);
    return t2 / (gamma * t2 + t1);
  };
  auto e_sym = [=](const Wavevector& k) {
    const double kn = k.norm();
    if (kn == 0.0) return delta / (gamma + delta);
    const double t1 = std::tanh(std::sqrt(mu) * kn);
    const double t2 = std::tanh(std::sqrt(mu2) * kn);
    return t1 / (gamma * t2 + t1);
  };
  auto s_over_d = [=](const Wavevector& k) { return symbols::t0(mu, k.norm()) * k_sym(k); };
  // (∇/|D|)·(S w)
  auto div_s = [&](const VectorField& w) { return div(apply_real_symbol(w, s_over_d)); };

  const VectorField kv = apply_real_symbol(v, k_sym);
  const VectorField ev = apply_real_symbol(v, e_sym);
  const ScalarField dsv = div_s(v);

  ScalarField zt = (1.0 / smu) * dsv;
  if (eps != 0.0) {
    zt.add_scaled(p.eps2() / smu, div_s(bilinear_b(p, s.zeta, kv)));
    zt.add_scaled(-eps, div(product_dealiased(s.zeta, kv)));
    const ScalarField z_dsv = product_dealiased(s.zeta, dsv);
    zt.add_scaled(eps, apply_real_symbol(z_dsv, [mu](const Wavevector& k) {
                    const double kn = k.norm();
                    return kn * std::tanh(std::sqrt(mu) * kn);
                  }));
  }
  zt *= -1.0;

  ScalarField bern = (1.0 - gamma) * s.zeta;
  if (eps != 0.0) {
    ScalarField q = dot_dealiased(ev, ev);
    q.add_scaled(-gamma, dot_dealiased(kv, kv));
    bern.add_scaled(0.5 * eps, q);
    bern.add_scaled(eps * (gamma - 1.0) / 2.0, product_dealiased(dsv, dsv));
  }
  return make_state(std::move(zt), -grad(bern));
}

ModelState rhs_bfd(const RegimeParams& p, const BoussinesqCoeffs& c, const ModelState& s) {
  const VectorField& w = velocity(s);
  const double mu = p.mu();
  const double mu2 = p.mu2();
  const double gamma = p.gamma();
  const double eps = p.eps();
  const double smu = std::sqrt(mu);
  const double a = c.a;
  const ScalarField dw = div(w);

  ScalarField flux_div = div(w);
  if (eps != 0.0) flux_div.add_scaled(-eps, div(product_dealiased(s.zeta, w)));
  ScalarField zt = (1.0 / gamma) * flux_div;
  // -(√μ/γ²)|D|coth ∇·w + (μ/γ)(a - coth²/γ²)Δ ∇·w as one multiplier; the
  // second symbol is (μ/γ)(k²coth²/γ² - a k²) with k²coth² → 1/μ₂.
  zt += apply_real_symbol(dw, [=](const Wavevector& k) {
    const double kn = k.norm();
    return -(smu / (gamma * gamma)) * symbols::kcoth(mu2, kn) +
           (mu / gamma) * (symbols::k2coth2(mu2, kn) / (gamma * gamma) - a * k.norm2());
  });
  zt = -invert_helmholtz(mu, c.b, zt);

  ScalarField bern = (1.0 - gamma) * s.zeta;
  bern.add_scaled(mu * c.c * (1.0 - gamma), laplacian(s.zeta));
  if (eps != 0.0) bern.add_scaled(-eps / (2.0 * gamma), dot_dealiased(w, w));
  VectorField wt = -invert_helmholtz(mu, c.d, grad(bern));
  return make_state(std::move(zt), std::move(wt));
}

ModelState rhs_bb(const RegimeParams& p, const BoussinesqCoeffs& c, const ModelState& s, bool gamma_factor) {
  const VectorField& w = velocity(s);
  const double mu = p.mu();
  const double gamma = p.gamma();
  const double delta = p.delta();
  const double eps = p.eps();
  const double gd = gamma + delta;
  const double nl = (delta * delta - gamma) / (gd * gd);

  ScalarField zt = (1.0 / gd) * div(w);
  if (eps != 0.0 && nl != 0.0) zt.add_scaled(eps * nl, div(product_dealiased(s.zeta, w)));
  zt.add_scaled(mu * c.a, laplacian(div(w)));
  zt = -invert_helmholtz(mu, c.b, zt);

  ScalarField bern = (1.0 - gamma) * s.zeta;
  bern.add_scaled(mu * c.c * (gamma_factor ? 1.0 - gamma : 1.0), laplacian(s.zeta));
  if (eps != 0.0 && nl != 0.0) bern.add_scaled(0.5 * eps * nl, dot_dealiased(w, w));
  VectorField wt = -invert_helmholtz(mu, c.d, grad(bern));
  return make_state(std::move(zt), std::move(wt));
}

namespace {

ModelState swsw_impl(const RegimeParams& p, const ModelState& s, const QFrakOptions& qopt, bool series) {
  const VectorField& v = velocity(s);
  const double gamma = p.gamma();
  const double delta = p.delta();
  const double eps = p.eps();
  const double gd = gamma + delta;
  const ScalarField h1 = upper_thickness(p, s.zeta);
  const ScalarField h2 = lower_thickness(p, s.zeta);
  const ScalarField a = ((gamma - 1.0) / gd * p.eps2()) * s.zeta;
  const VectorField w = product_dealiased(h2, v);
  const VectorField q = (!series && v.dim() == 1) ? q_frak_closed_1d(a, w) : q_frak(a, w, qopt).value;

  const ScalarField zt = (-1.0 / gd) * div(product_dealiased(h1, q));

  ScalarField bern = (1.0 - gamma) * s.zeta;
  if (eps != 0.0) {
    VectorField rel = v;
    rel.add_scaled(-gamma / gd, q);
    ScalarField e = dot_dealiased(rel, rel);
    e.add_scaled(-gamma / (gd * gd), dot_dealiased(q, q));
    bern.add_scaled(0.5 * eps, e);
  }
  return make_state(zt, -grad(bern));
}

}  // namespace

ModelState rhs_swsw(const RegimeParams& p, const ModelState& s, const QFrakOptions& qopt) {
  return swsw_impl(p, s, qopt, false);
}

ModelState rhs_swsw_series(const RegimeParams& p, const ModelState& s, const QFrakOptions& qopt) {
  return swsw_impl(p, s, qopt, true);
}

ModelState rhs_swfd(const RegimeParams& p, const ModelState& s) {
  const VectorField& v = velocity(s);
  const double gamma = p.gamma();
  const double eps = p.eps();
  const double smu = std::sqrt(p.mu());
  const ScalarField h1 = upper_thickness(p, s.zeta);
  const VectorField h1v = product_dealiased(h1, v);
  const VectorField lpi = lambda_coth(p.mu2(), projector_pi(h1v));

  ScalarField zt = (1.0 / gamma) * div(h1v);
  zt.add_scaled(-smu / (gamma * gamma), div(product_dealiased(h1, lpi)));
  zt *= -1.0;

  ScalarField bern = (1.0 - gamma) * s.zeta;
  if (eps != 0.0) {
    ScalarField e = dot_dealiased(v, v);
    e.add_scaled(-2.0 * smu / gamma, dot_dealiased(v, lpi));
    bern.add_scaled(-eps / (2.0 * gamma), e);
  }
  return make_state(std::move(zt), -grad(bern));
}

ModelState rhs_ilw_bo(const RegimeParams& p, double alpha, const ModelState& s, bool infinite_depth) {
  if (!(p.gamma() > 0.0)) throw Error("ILW/BO systems need gamma > 0");
  const VectorField& v = velocity(s);
  const double gamma = p.gamma();
  const double eps = p.eps();
  const double smu = std::sqrt(p.mu());
  const double mu2 = p.mu2();

  ScalarField flux_div = div(v);
  if (eps != 0.0) flux_div.add_scaled(-eps, div(product_dealiased(s.zeta, v)));
  ScalarField zt = (1.0 / gamma) * flux_div;
  zt.add_scaled(-(1.0 - alpha) * smu / (gamma * gamma),
                apply_real_symbol(div(v), [=](const Wavevector& k) {
                  return infinite_depth ? k.norm() : symbols::kcoth(mu2, k.norm());
                }));
  zt = apply_real_symbol(zt, [&](const Wavevector& k) {
    return -1.0 / ilw_prefactor(p, alpha, infinite_depth, k.norm());
  });

  ScalarField bern = (1.0 - gamma) * s.zeta;
  if (eps != 0.0) bern.add_scaled(-eps / (2.0 * gamma), dot_dealiased(v, v));
  return make_state(std::move(zt), -grad(bern));
}

ScalarField rhs_rbo(const RegimeParams& p, double alpha, const ScalarField& zeta) {
  if (zeta.grid().dim() != 1) throw Error("regularized Benjamin-Ono equation is one-dimensional");
  const double gamma = p.gamma();
  if (!(gamma > 0.0 && gamma < 1.0)) throw Error("regularized Benjamin-Ono equation needs 0 < gamma < 1");
  const double c = std::sqrt((1.0 - gamma) / gamma);
  const double smu = std::sqrt(p.mu());
  const double disp = (smu / (2.0 * gamma)) * c * (1.0 - 2.0 * alpha);
  const ScalarField zx = partial(zeta, 0);
  ScalarField r = c * zx;
  if (p.eps() != 0.0) r.add_scaled(-0.75 * p.eps() * c, partial(product_dealiased(zeta, zeta), 0));
  r.add_scaled(-disp, apply_real_symbol(zx, [](const Wavevector& k) { return k.norm(); }));
  return apply_real_symbol(r, [=](const Wavevector& k) { return -1.0 / (1.0 + smu * (alpha / gamma) * k.norm()); });
}

ModelState rhs(const ModelId& model, const RegimeParams& p, const ModelState& s) {
  switch (model.kind) {
    case ModelKind::FDFD: return rhs_fdfd(p, s);
    case ModelKind::BFD: return rhs_bfd(p, model.coeffs, s);
    case ModelKind::BB: return rhs_bb(p, model.coeffs, s, model.bb_gamma_factor);
    case ModelKind::SWSW: return rhs_swsw(p, s);
    case ModelKind::SWFD: return rhs_swfd(p, s);
    case ModelKind::ILW: return rhs_ilw_bo(p, model.alpha, s, false);
    case ModelKind::BOSYS: return rhs_ilw_bo(p, model.alpha, s, true);
    case ModelKind::RBO: return ModelState{rhs_rbo(p, model.alpha, s.zeta), std::nullopt};
  }
  throw Error("unknown model");
}

ModelState apply_prefactor(const ModelId& model, const RegimeParams& p, const ModelState& s) {
  const double mu = p.mu();
  switch (model.kind) {
    case ModelKind::BFD:
    case ModelKind::BB:
      return ModelState{apply_helmholtz(mu, model.coeffs.b, s.zeta), apply_helmholtz(mu, model.coeffs.d, velocity(s))};
    case ModelKind::ILW:
    case ModelKind::BOSYS: {
      const bool inf = model.kind == ModelKind::BOSYS;
      const double alpha = model.alpha;
      ScalarField z = apply_real_symbol(
          s.zeta, [&](const Wavevector& k) { return ilw_prefactor(p, alpha, inf, k.norm()); });
      return ModelState{std::move(z), s.v};
    }
    case ModelKind::RBO: {
      const double smu = std::sqrt(mu);
      const double r = model.alpha / p.gamma();
      return ModelState{
          apply_real_symbol(s.zeta, [=](const Wavevector& k) { return 1.0 + smu * r * k.norm(); }),
          std::nullopt};
    }
    default: return s;
  }
}

ModelState to_model_state(const ModelId& model, const RegimeParams& p, const ScalarField& zeta,
                          const std::optional<VectorField>& v) {
  if (!model.has_velocity()) return ModelState{zeta, std::nullopt};
  if (!v) throw Error(std::string("model ") + model_name(model.kind) + " needs a velocity");
  if (model.uses_v_beta()) return ModelState{zeta, to_v_beta(p.mu(), model.coeffs.beta, *v)};
  return ModelState{zeta, *v};
}

void validate_model(const ModelId& model, const RegimeParams& p, int dim) {
  const std::string name = model_name(model.kind);
  switch (model.kind) {
    case ModelKind::BFD:
    case ModelKind::BB:
      if (model.coeffs.b < 0.0 || model.coeffs.d < 0.0)
        throw Error(name + ": coefficients b and d must be nonnegative");
      if (model.kind == ModelKind::BFD && !(p.gamma() > 0.0)) throw Error(name + " needs gamma > 0");
      break;
    case ModelKind::SWFD:
    case ModelKind::ILW:
    case ModelKind::BOSYS:
      if (!(p.gamma() > 0.0)) throw Error(name + " needs gamma > 0");
      break;
    case ModelKind::RBO:
      if (dim != 1) throw Error("rbo is one-dimensional");
      if (!(p.gamma() > 0.0 && p.gamma() < 1.0)) throw Error("rbo needs 0 < gamma < 1");
      break;
    default: break;
  }
}

}  // namespace iwave
