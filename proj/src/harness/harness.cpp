#include "iwave/harness/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "iwave/error.hpp"
#include "iwave/models/simulate.hpp"
#include "iwave/operators/operators.hpp"
#include "iwave/spectral/ops.hpp"

namespace iwave {

// ---------------------------------------------------------------- residuals

double ResidualNorms::combined() const { return std::hypot(zeta, v); }

ResidualNorms consistency_residual(const ModelId& model, const RegimeParams& p, const ScalarField& zeta,
                                   const ScalarField& psi1, const OracleState& state, double sobolev_index) {
  if (!model.has_velocity()) throw Error("consistency residual needs a system in (zeta, v)");
  validate_model(model, p, zeta.grid().dim());
  const FullRhs full = full_rhs(p, zeta, psi1, state);
  const VectorField v = v_from_psi(p, psi1, state);
  const ModelState s = to_model_state(model, p, zeta, v);
  ModelState dt{full.dzeta_dt, model.uses_v_beta() ? to_v_beta(p.mu(), model.coeffs.beta, full.dv_dt) : full.dv_dt};
  dt.add_scaled(-1.0, rhs(model, p, s));
  const ModelState r = apply_prefactor(model, p, dt);
  return {sobolev_norm(r.zeta, sobolev_index), sobolev_norm(*r.v, sobolev_index)};
}

ResidualNorms consistency_residual(const ModelId& model, const RegimeParams& p, const ScalarField& zeta,
                                   const ScalarField& psi1, const StripGrid& strip, double sobolev_index,
                                   const OracleOptions& opt) {
  if (!model.has_velocity()) throw Error("consistency residual needs a system in (zeta, v)");
  const OracleState st = oracle_evaluate(p, zeta, psi1, strip, opt);
  return consistency_residual(model, p, zeta, psi1, st, sobolev_index);
}

// ---------------------------------------------------------------- regimes

const char* regime_cell_name(RegimeCell c) {
  switch (c) {
    case RegimeCell::Full: return "full equations";
    case RegimeCell::FDFD: return "FD/FD";
    case RegimeCell::SWSW: return "SW/SW";
    case RegimeCell::SWFD: return "SW/FD";
    case RegimeCell::BFD: return "B/FD";
    case RegimeCell::BB: return "B/B";
    case RegimeCell::ILW: return "ILW";
    case RegimeCell::BO: return "BO";
  }
  return "?";
}

RegimeCell regime_table_check(double eps, double mu, double delta, const RegimeThresholds& t) {
  auto small = [&](double x) { return x < t.small; };
  auto like = [&](double a, double b) {
    if (a == 0.0 || b == 0.0) return a == b;
    const double r = a / b;
    return r >= 1.0 / t.ratio && r <= t.ratio;
  };
  const double eps2 = eps * delta;
  const bool eps_small = small(eps);
  if (!small(mu)) {
    if (!eps_small) return RegimeCell::Full;
    return like(delta, 1.0) ? RegimeCell::FDFD : RegimeCell::Full;
  }
  if (!eps_small) {
    if (like(delta, 1.0)) return RegimeCell::SWSW;
    if (delta > 0.0 && like(delta * delta, mu) && like(mu, eps2 * eps2)) return RegimeCell::SWFD;
    return RegimeCell::Full;
  }
  if (delta == 0.0) return like(mu, eps * eps) ? RegimeCell::BO : RegimeCell::Full;
  if (like(mu, eps) && like(delta * delta, eps)) return RegimeCell::BFD;
  if (like(mu, eps) && like(delta, 1.0)) return RegimeCell::BB;
  if (like(delta * delta, mu) && like(mu, eps * eps)) return RegimeCell::ILW;
  return RegimeCell::Full;
}

RegimeCell regime_table_check(const RegimeParams& p, const RegimeThresholds& t) {
  return regime_table_check(p.eps(), p.mu(), p.delta(), t);
}

std::optional<ModelKind> regime_model(RegimeCell c) {
  switch (c) {
    case RegimeCell::FDFD: return ModelKind::FDFD;
    case RegimeCell::SWSW: return ModelKind::SWSW;
    case RegimeCell::SWFD: return ModelKind::SWFD;
    case RegimeCell::BFD: return ModelKind::BFD;
    case RegimeCell::BB: return ModelKind::BB;
    case RegimeCell::ILW: return ModelKind::ILW;
    case RegimeCell::BO: return ModelKind::BOSYS;
    case RegimeCell::Full: return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- corpus

SpectralGrid Corpus::grid() const {
  if (dim == 1) return make_grid(1, {length}, {points});
  return make_grid(2, {length, length}, {points, points});
}

StripGrid Corpus::strip() const { return StripGrid::make(grid(), nz); }

ScalarField Corpus::zeta(const std::vector<RegimeParams>& sweep) const {
  double reach = 0.0;
  for (const RegimeParams& p : sweep) reach = std::max({reach, p.eps(), p.eps2()});
  const double amp = reach > 0.0 ? std::min(zeta_amplitude, 0.5 / reach) : zeta_amplitude;
  const SpectralGrid g = grid();
  if (kind == "random") return random_band_limited(g, max_mode, amp, zeta_seed);
  if (kind == "gaussian") return remove_mean(gaussian_hump(g, amp, length / 8.0));
  throw Error("unknown corpus kind '" + kind + "' (expected random or gaussian)");
}

ScalarField Corpus::psi() const { return random_band_limited(grid(), max_mode, psi_amplitude, psi_seed); }

// ---------------------------------------------------------------- targets

namespace {

struct TargetRow {
  Target target;
  const char* name;
};

constexpr TargetRow kTargets[] = {
    {Target::PROP1, "prop1"},       {Target::PROP2, "prop2"},       {Target::REMB, "remb"},
    {Target::CORO2, "coro2"},       {Target::CORO2BIS, "coro2bis"}, {Target::CORO2TER, "coro2ter"},
    {Target::CORO1, "coro1"},       {Target::CORO3, "coro3"},       {Target::THM1, "thm1"},
    {Target::THM2, "thm2"},         {Target::THM3, "thm3"},         {Target::THM4, "thm4"},
    {Target::THM5, "thm5"},         {Target::THM6, "thm6"},
};

const std::vector<double> kEpsSweep{0.2, 0.1, 0.05, 0.025};
const std::vector<double> kMuSweep{0.1, 0.05, 0.025, 0.0125};

bool is_residual_target(Target t) {
  switch (t) {
    case Target::THM1:
    case Target::THM2:
    case Target::THM3:
    case Target::THM4:
    case Target::THM5:
    case Target::THM6: return true;
    default: return false;
  }
}

// Default (ε, μ, δ) as functions of the swept value.
struct Defaults {
  std::function<double(double)> eps, mu, delta;
};

Defaults defaults_for(Target t) {
  auto id = [](double x) { return x; };
  auto cst = [](double c) { return [c](double) { return c; }; };
  auto root = [](double x) { return std::sqrt(x); };
  switch (t) {
    case Target::PROP2: return {id, cst(0.5), cst(1.0)};
    case Target::PROP1: return {cst(0.5), id, cst(1.0)};
    case Target::REMB: return {cst(0.0), id, cst(1.0)};
    case Target::CORO2:
    case Target::THM1: return {id, cst(1.0), cst(1.0)};
    case Target::CORO2BIS:
    case Target::THM2: return {id, id, root};
    case Target::CORO2TER:
    case Target::THM3: return {id, id, cst(1.0)};
    case Target::CORO1: return {cst(0.5), id, cst(1.0)};
    case Target::THM4: return {cst(0.8), id, cst(1.0)};
    case Target::CORO3:
    case Target::THM5: return {cst(0.5), id, root};
    case Target::THM6: return {root, id, root};
  }
  throw Error("unknown target");
}

double tie_value(const std::string& name, const RegimeParams& p) {
  if (name == "eps") return p.eps();
  if (name == "mu") return p.mu();
  if (name == "delta") return p.delta();
  if (name == "delta^2") return p.delta() * p.delta();
  if (name == "eps^2") return p.eps() * p.eps();
  if (name == "eps2^2") return p.eps2() * p.eps2();
  if (name == "mu2") return p.mu2();
  if (name == "1") return 1.0;
  throw Error("unknown tie quantity " + name);
}

}  // namespace

const char* target_name(Target t) {
  for (const auto& row : kTargets)
    if (row.target == t) return row.name;
  return "?";
}

Target parse_target(const std::string& name) {
  std::string s;
  for (char c : name)
    if (c != '_' && c != '-') s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (const auto& row : kTargets)
    if (s == row.name) return row.target;
  throw Error("unknown verification target '" + name + "'");
}

std::vector<Target> all_targets() {
  std::vector<Target> out;
  for (const auto& row : kTargets) out.push_back(row.target);
  return out;
}

TargetInfo target_info(Target t) {
  TargetInfo i;
  i.target = t;
  switch (t) {
    case Target::PROP2:
      i.quantity = "small-amplitude expansion of V against the strip oracle";
      i.bound = "|V_approx - V| <= C eps^2";
      i.variable = "eps";
      i.expected_order = 2.0;
      break;
    case Target::PROP1:
      i.quantity = "first-order shallow expansion of sqrt(mu) V against the strip oracle";
      i.bound = "|mu(1 - eps zeta) grad psi - sqrt(mu) V| <= C mu^2";
      i.variable = "mu";
      i.expected_order = 2.0;
      break;
    case Target::REMB:
      i.quantity = "second-order shallow expansion of sqrt(mu) V at eps = 0";
      i.bound = "|mu grad psi + (mu^2/3) Lap grad psi - sqrt(mu) V| <= C mu^3 at eps = 0";
      i.variable = "mu";
      i.expected_order = 3.0;
      i.ties = {"eps = 0"};
      break;
    case Target::CORO2:
      i.quantity = "FD/FD expansion of H against the strip oracle";
      i.bound = "|H_approx - H| <= C (eps2^2 + eps^2)/sqrt(mu2)";
      i.variable = "eps";
      i.expected_order = 2.0;
      break;
    case Target::CORO2BIS:
      i.quantity = "B/FD expansion of H against the strip oracle";
      i.bound = "|H_approx - H| <= C ((eps2^2 + eps^2)/sqrt(mu2) + eps mu + eps sqrt(mu) delta)";
      i.variable = "eps";
      i.expected_order = 2.0;
      i.ties = {"mu ~ eps", "delta^2 ~ eps"};
      break;
    case Target::CORO2TER:
      i.quantity = "B/B expansion of H against the strip oracle";
      i.bound = "|H_approx - H| <= C ((eps2^2 + eps^2)/sqrt(mu2) + mu^2 + eps^2), first term of size eps^(3/2)";
      i.variable = "eps";
      i.expected_order = 1.5;
      i.ties = {"mu ~ eps", "delta ~ 1"};
      break;
    case Target::CORO1:
      i.quantity = "SW/SW expansion of H against the strip oracle";
      i.bound = "|H_approx - H| <= C delta (mu + mu2)";
      i.variable = "mu";
      i.expected_order = 1.0;
      i.ties = {"delta ~ 1"};
      break;
    case Target::CORO3:
      i.quantity = "SW/small-amplitude expansion of H against the strip oracle";
      i.bound = "|H_approx - H| <= C (mu^(3/2) + eps2 sqrt(mu))/sqrt(mu2)";
      i.variable = "mu";
      i.expected_order = 1.0;
      i.ties = {"delta^2 ~ mu"};
      break;
    case Target::THM1:
      i.quantity = "FD/FD consistency residual";
      i.bound = "residual = O(eps^2)";
      i.variable = "eps";
      i.expected_order = 2.0;
      break;
    case Target::THM2:
      i.quantity = "B/FD consistency residual";
      i.bound = "residual = O(eps^(3/2))";
      i.variable = "eps";
      i.expected_order = 1.5;
      i.ties = {"mu ~ eps", "delta^2 ~ eps"};
      break;
    case Target::THM3:
      i.quantity = "B/B consistency residual";
      i.bound = "residual = O(eps^2) claimed; accepted from order 1.3 with the measured value reported";
      i.variable = "eps";
      i.expected_order = 2.0;
      i.ties = {"mu ~ eps", "delta ~ 1"};
      break;
    case Target::THM4:
      i.quantity = "SW/SW consistency residual";
      i.bound = "residual = O(mu)";
      i.variable = "mu";
      i.expected_order = 1.0;
      i.ties = {"delta ~ 1"};
      break;
    case Target::THM5:
      i.quantity = "SW/FD consistency residual";
      i.bound = "residual = O(mu)";
      i.variable = "mu";
      i.expected_order = 1.0;
      i.ties = {"delta^2 ~ mu", "mu ~ eps2^2"};
      break;
    case Target::THM6:
      i.quantity = "ILW consistency residual";
      i.bound = "residual = O(mu)";
      i.variable = "mu";
      i.expected_order = 1.0;
      i.ties = {"delta^2 ~ mu", "mu ~ eps^2"};
      break;
  }
  i.values = i.variable == "eps" ? kEpsSweep : kMuSweep;
  // First-order targets are held to 0.9 rather than 0.8.
  i.pass_order = t == Target::THM3 ? 1.3 : i.expected_order == 1.0 ? 0.9 : i.expected_order - 0.2;
  return i;
}

// ---------------------------------------------------------------- fits

OrderFit fit_order(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) throw Error("order fit needs at least 3 matching samples");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error("order fit needs positive samples");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) mx += lx[i], my += ly[i];
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  OrderFit f;
  f.order = sxy / sxx;
  f.intercept = my - f.order * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (f.intercept + f.order * lx[i]);
    rss += r * r;
  }
  f.std_error = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  // Two-sided 95% Student t quantiles for 1..10 degrees of freedom.
  static const double tq[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228};
  const std::size_t dof = n - 2;
  const double t = dof <= 10 ? tq[dof - 1] : 1.96;
  f.ci_low = f.order - t * f.std_error;
  f.ci_high = f.order + t * f.std_error;
  return f;
}

// ---------------------------------------------------------------- studies

std::vector<RegimeParams> sweep_params(const SweepSpec& spec) {
  const TargetInfo info = target_info(spec.target);
  const std::vector<double>& xs = spec.values.empty() ? info.values : spec.values;
  const Defaults d = defaults_for(spec.target);
  if ((info.variable == "eps" && spec.eps) || (info.variable == "mu" && spec.mu))
    throw Error(std::string("target ") + target_name(spec.target) + " sweeps " + info.variable +
                "; it cannot also be fixed");
  std::vector<RegimeParams> out;
  for (double x : xs) {
    const double eps = spec.eps.value_or(d.eps(x));
    const double mu = spec.mu.value_or(d.mu(x));
    const double delta = spec.delta.value_or(d.delta(x));
    out.emplace_back(spec.gamma, delta, eps, mu);
  }
  constexpr double kBand = 4.0;
  for (const std::string& tie : info.ties) {
    if (tie == "eps = 0") {
      for (const RegimeParams& p : out)
        if (p.eps() != 0.0)
          throw Error(std::string("sweep breaks the regime tie eps = 0 of target ") + target_name(spec.target));
      continue;
    }
    const auto sep = tie.find(" ~ ");
    const std::string a = tie.substr(0, sep);
    const std::string b = tie.substr(sep + 3);
    double lo = INFINITY, hi = 0.0;
    for (const RegimeParams& p : out) {
      const double r = tie_value(a, p) / tie_value(b, p);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    // b = "1" ties a value to order one; otherwise the ratio must stay
    // bounded along the sweep.
    const bool broken = b == "1" ? (lo < 1.0 / kBand || hi > kBand) : !(lo > 0.0) || hi / lo > kBand;
    if (broken) {
      std::ostringstream os;
      os << "sweep breaks the regime tie " << tie << " of target " << target_name(spec.target) << " (ratio "
         << a << "/" << b << " ranges over [" << lo << ", " << hi << "])";
      throw Error(os.str());
    }
  }
  return out;
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

ModelId residual_model(const SweepSpec& spec, const RegimeParams& p) {
  switch (spec.target) {
    case Target::THM1: return ModelId::fdfd();
    case Target::THM2: return ModelId::bfd(coeffs_bfd(spec.alpha1, spec.alpha2, spec.beta));
    case Target::THM3: {
      ModelId m = ModelId::bb(coeffs_bb(p.gamma(), p.delta(), spec.alpha1, spec.alpha2, spec.beta));
      m.bb_gamma_factor = spec.bb_gamma_factor;
      return m;
    }
    case Target::THM4: return ModelId::swsw();
    case Target::THM5: return ModelId::swfd();
    case Target::THM6: return ModelId::ilw(spec.alpha);
    default: throw Error("not a consistency target");
  }
}

StudySample evaluate_sample(const SweepSpec& spec, const RegimeParams& p, double x, const ScalarField& zeta,
                            const ScalarField& psi, const StripGrid& strip) {
  StudySample s;
  s.x = x;
  s.params = p;
  const double si = spec.sobolev_index;
  const Target t = spec.target;
  if (is_residual_target(t)) {
    const OracleState st = oracle_evaluate(p, zeta, psi, strip);
    const ResidualNorms r = consistency_residual(residual_model(spec, p), p, zeta, psi, st, si);
    s.error_zeta = r.zeta;
    s.error_v = r.v;
    s.error = r.combined();
    s.oracle_iterations = st.upper.iterations + st.lower.iterations;
    s.oracle_residual = std::max(st.upper.residual_norm, st.lower.residual_norm);
    const FullRhs full = full_rhs(p, zeta, psi, st);
    s.reference_norm = std::hypot(sobolev_norm(full.dzeta_dt, si), sobolev_norm(full.dv_dt, si));
    return s;
  }
  const OracleState st = oracle_evaluate(p, zeta, psi, strip);
  s.oracle_iterations = st.upper.iterations + st.lower.iterations;
  s.oracle_residual = std::max(st.upper.residual_norm, st.lower.residual_norm);
  VectorField approx, exact;
  switch (t) {
    case Target::PROP2:
      exact = st.v;
      approx = expand_v_small_amplitude(p, zeta, psi);
      break;
    case Target::PROP1:
    case Target::REMB:
      exact = st.v;
      exact *= std::sqrt(p.mu());
      approx = expand_v_shallow(p, zeta, psi, t == Target::REMB ? 2 : 1);
      break;
    default: {
      HRegime r = HRegime::FDFD;
      if (t == Target::CORO2BIS) r = HRegime::BFD;
      if (t == Target::CORO2TER) r = HRegime::BB;
      if (t == Target::CORO1) r = HRegime::SWSW;
      if (t == Target::CORO3) r = HRegime::SWSA;
      exact = st.h;
      approx = expand_h(p, zeta, psi, r);
    }
  }
  s.error = sobolev_norm(approx - exact, si);
  s.reference_norm = sobolev_norm(exact, si);
  return s;
}

}  // namespace

RunRecord convergence_study(const SweepSpec& spec) {
  RunRecord rec;
  rec.target = spec.target;
  rec.label = target_name(spec.target);
  rec.info = target_info(spec.target);
  if (!spec.values.empty()) rec.info.values = spec.values;
  const std::vector<double>& xs = rec.info.values;
  if (xs.size() < 4) throw Error("convergence study needs at least 4 sweep points");
  const std::vector<RegimeParams> ps = sweep_params(spec);

  const Corpus& c = spec.corpus;
  const ScalarField zeta = c.zeta(ps);
  const ScalarField psi = c.psi();
  const StripGrid strip = c.strip();

  auto& cfg = rec.config;
  cfg.emplace_back("target", target_name(spec.target));
  cfg.emplace_back("variable", rec.info.variable);
  std::string vals;
  for (double x : xs) vals += (vals.empty() ? "" : ",") + fmt(x);
  cfg.emplace_back("values", vals);
  cfg.emplace_back("gamma", fmt(spec.gamma));
  if (spec.eps) cfg.emplace_back("eps", fmt(*spec.eps));
  if (spec.mu) cfg.emplace_back("mu", fmt(*spec.mu));
  if (spec.delta) cfg.emplace_back("delta", fmt(*spec.delta));
  cfg.emplace_back("sobolev_index", fmt(spec.sobolev_index));
  cfg.emplace_back("corpus_kind", c.kind);
  cfg.emplace_back("dim", std::to_string(c.dim));
  cfg.emplace_back("points", std::to_string(c.points));
  cfg.emplace_back("length", fmt(c.length));
  cfg.emplace_back("nz", std::to_string(c.nz));
  cfg.emplace_back("max_mode", std::to_string(c.max_mode));
  cfg.emplace_back("zeta_sup", fmt(zeta.max_abs()));
  cfg.emplace_back("psi_sup", fmt(psi.max_abs()));
  cfg.emplace_back("zeta_seed", std::to_string(c.zeta_seed));
  cfg.emplace_back("psi_seed", std::to_string(c.psi_seed));
  if (is_residual_target(spec.target)) {
    const ModelId m = residual_model(spec, ps.front());
    rec.model = m.describe();
    cfg.emplace_back("model", rec.model);
  }

  rec.samples.resize(xs.size());
  parallel_for(static_cast<int>(xs.size()), [&](int i) {
    rec.samples[i] = evaluate_sample(spec, ps[i], xs[i], zeta, psi, strip);
  });

  std::vector<double> ys;
  for (const StudySample& s : rec.samples) ys.push_back(s.error);
  rec.fit = fit_order(xs, ys);
  rec.pass = rec.fit.order >= rec.info.pass_order;
  return rec;
}

RunRecord consistency_study(const ModelId& model, const std::vector<RegimeParams>& params,
                            const std::vector<double>& x, const std::string& variable, const Corpus& corpus,
                            double sobolev_index, std::optional<double> expected_order) {
  if (params.size() != x.size()) throw Error("consistency study needs one parameter set per sweep value");
  if (x.size() < 4) throw Error("consistency study needs at least 4 sweep points");
  RunRecord rec;
  rec.label = std::string("consistency_") + model_name(model.kind);
  rec.model = model.describe();
  rec.info.quantity = rec.model + " consistency residual";
  rec.info.variable = variable;
  rec.info.values = x;
  rec.info.expected_order = expected_order.value_or(0.0);
  rec.info.pass_order = expected_order ? *expected_order - 0.2 : -INFINITY;
  rec.info.bound = expected_order ? "residual = O(" + variable + "^" + fmt(*expected_order) + ")" : "none";

  const ScalarField zeta = corpus.zeta(params);
  const ScalarField psi = corpus.psi();
  const StripGrid strip = corpus.strip();
  rec.config = {{"model", rec.model},        {"variable", variable},
                {"sobolev_index", fmt(sobolev_index)}, {"corpus_kind", corpus.kind},
                {"dim", std::to_string(corpus.dim)},   {"points", std::to_string(corpus.points)},
                {"length", fmt(corpus.length)},        {"nz", std::to_string(corpus.nz)},
                {"zeta_sup", fmt(zeta.max_abs())},     {"psi_sup", fmt(psi.max_abs())}};
  rec.samples.resize(x.size());
  parallel_for(static_cast<int>(x.size()), [&](int i) {
    const RegimeParams& p = params[i];
    const OracleState st = oracle_evaluate(p, zeta, psi, strip);
    const ResidualNorms r = consistency_residual(model, p, zeta, psi, st, sobolev_index);
    StudySample& s = rec.samples[i];
    s.x = x[i];
    s.params = p;
    s.error_zeta = r.zeta;
    s.error_v = r.v;
    s.error = r.combined();
    s.oracle_iterations = st.upper.iterations + st.lower.iterations;
    s.oracle_residual = std::max(st.upper.residual_norm, st.lower.residual_norm);
    const FullRhs full = full_rhs(p, zeta, psi, st);
    s.reference_norm = std::hypot(sobolev_norm(full.dzeta_dt, sobolev_index), sobolev_norm(full.dv_dt, sobolev_index));
  });
  std::vector<double> ys;
  for (const StudySample& s : rec.samples) ys.push_back(s.error);
  rec.fit = fit_order(x, ys);
  rec.pass = rec.fit.order >= rec.info.pass_order;
  return rec;
}

std::string RunRecord::summary() const {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << label << ": order " << fit.order << " (95% band [" << fit.ci_low << ", " << fit.ci_high << "])";
  if (std::isfinite(info.pass_order))
    os << ", expected " << info.expected_order << ", pass from " << info.pass_order << " -> "
       << (pass ? "PASS" : "FAIL") << "; bound: " << info.bound;
  else
    os << ", no expected order";
  return os.str();
}

void write_run_record(const std::string& dir, const RunRecord& rec) {
  std::filesystem::create_directories(dir);
  const std::string base = dir + "/" + rec.label;
  {
    std::ofstream m(base + ".meta.txt");
    if (!m) throw Error("cannot write " + base + ".meta.txt");
    m << std::setprecision(17);
    for (const auto& [k, v] : rec.config) m << k << " = " << v << "\n";
    m << "quantity = " << rec.info.quantity << "\n";
    m << "bound = " << rec.info.bound << "\n";
    m << "expected_order = " << rec.info.expected_order << "\n";
    m << "pass_order = " << rec.info.pass_order << "\n";
    m << "fitted_order = " << rec.fit.order << "\n";
    m << "fit_intercept = " << rec.fit.intercept << "\n";
    m << "fit_std_error = " << rec.fit.std_error << "\n";
    m << "fit_ci95 = " << rec.fit.ci_low << "," << rec.fit.ci_high << "\n";
    m << "pass = " << (rec.pass ? "true" : "false") << "\n";
  }
  std::ofstream c(base + ".csv");
  if (!c) throw Error("cannot write " + base + ".csv");
  c << std::setprecision(17);
  c << rec.info.variable << ",gamma,delta,eps,mu,error,error_zeta,error_v,reference_norm,oracle_iterations,"
       "oracle_residual\n";
  for (const StudySample& s : rec.samples) {
    c << s.x << "," << s.params.gamma() << "," << s.params.delta() << "," << s.params.eps() << ","
      << s.params.mu() << "," << s.error << "," << s.error_zeta << "," << s.error_v << "," << s.reference_norm
      << "," << s.oracle_iterations << "," << s.oracle_residual << "\n";
  }
}

}  // namespace iwave
