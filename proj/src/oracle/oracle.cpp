#include "iwave/oracle/oracle.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "iwave/error.hpp"
#include "iwave/log.hpp"
#include "iwave/oracle/chebyshev.hpp"
#include "iwave/spectral/io.hpp"
#include "iwave/spectral/ops.hpp"

namespace iwave {

StripGrid StripGrid::make(const SpectralGrid& horizontal, int nz) {
  if (nz < 8) throw Error("strip grid needs nz >= 8");
  return {horizontal, nz};
}

StripGrid StripGrid::standard(const SpectralGrid& horizontal) {
  return make(horizontal, horizontal.dim() == 1 ? 32 : 24);
}

namespace {

double rms(const ScalarField& f) { return quadrature_l2(f) / std::sqrt(f.grid().measure()); }

}  // namespace

OracleSolution solve_upper(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                           const StripGrid& strip, const OracleOptions& opt) {
  require_same_grid(strip.horizontal, zeta.grid());
  require_same_grid(strip.horizontal, psi1.grid());
  DepthBounds::of(p, zeta).require(opt.depth_floor, -std::numeric_limits<double>::infinity());
  const SpectralGrid& g = strip.horizontal;
  const double psi_mean = psi1.mean();

  StripProblem prob;
  prob.grid = g;
  prob.nz = strip.nz;
  prob.mu = p.mu();
  prob.thickness = upper_thickness(p, zeta);
  prob.grad_base = VectorField(g);
  prob.grad_thickness = -p.eps() * grad(zeta);
  prob.top = BoundaryKind::flux;
  prob.top_data = ScalarField(g);
  prob.bottom = BoundaryKind::dirichlet;
  prob.bottom_data = psi1 + (-psi_mean);

  StripSolution s = solve_strip(prob, opt.solver);
  const StripFluxes f = strip_fluxes(prob, s.levels);

  OracleSolution out;
  out.strip = strip;
  out.residual_norm = s.residual_norm;
  out.iterations = s.iterations;
  for (auto& level : s.levels) out.phi.push_back(level + psi_mean);
  out.trace = out.phi.back();
  out.trace_grad = grad(out.trace);
  // Nyquist modes are outside the discrete unknown space.
  out.neumann_data = apply_real_symbol(f.fs.back(), [](const Wavevector& k) { return k.nyquist ? 0.0 : 1.0; });
  return out;
}

OracleSolution solve_lower(const RegimeParams& p, const ScalarField& zeta, const ScalarField& g_flux,
                           const StripGrid& strip, const OracleOptions& opt) {
  require_same_grid(strip.horizontal, zeta.grid());
  require_same_grid(strip.horizontal, g_flux.grid());
  DepthBounds::of(p, zeta).require(-std::numeric_limits<double>::infinity(), opt.depth_floor);
  const SpectralGrid& g = strip.horizontal;

  const double mean = g_flux.mean();
  const double scale = rms(g_flux);
  OracleSolution out;
  out.compatibility_defect = scale > 0.0 ? std::abs(mean) / scale : 0.0;
  if (out.compatibility_defect > opt.compatibility_limit) {
    std::ostringstream os;
    os << "lower-layer Neumann data has relative mean " << out.compatibility_defect
       << "; upstream flux is inaccurate";
    log_warning(os.str());
  }

  StripProblem prob;
  prob.grid = g;
  prob.nz = strip.nz;
  prob.mu = p.mu();
  prob.thickness = (1.0 / p.delta()) * lower_thickness(p, zeta);
  prob.grad_base = p.eps() * grad(zeta);
  prob.grad_thickness = prob.grad_base;
  prob.top = BoundaryKind::flux;
  prob.top_data = g_flux + (-mean);
  prob.bottom = BoundaryKind::flux;
  prob.bottom_data = ScalarField(g);

  StripSolution s = solve_strip(prob, opt.solver);
  const ChebyshevLine cheb(strip.nz);
  double strip_mean = 0.0;
  for (int j = 0; j < strip.nz; ++j) strip_mean += cheb.w[j] * s.levels[j].mean();

  out.strip = strip;
  out.residual_norm = s.residual_norm;
  out.iterations = s.iterations;
  for (auto& level : s.levels) out.phi.push_back(level + (-strip_mean));
  out.trace = out.phi.front();
  out.trace_grad = grad(out.trace);
  out.neumann_data = prob.top_data;
  return out;
}

OracleState oracle_evaluate(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                            const StripGrid& strip, const OracleOptions& opt) {
  OracleState st;
  st.upper = solve_upper(p, zeta, psi1, strip, opt);
  st.g = st.upper.neumann_data;

  // V = ∫ √μ ∇Φ dz = (1/√μ) ∫ F_X ds on the flattened strip.
  StripProblem prob;
  const SpectralGrid& g = strip.horizontal;
  prob.grid = g;
  prob.nz = strip.nz;
  prob.mu = p.mu();
  prob.thickness = upper_thickness(p, zeta);
  prob.grad_base = VectorField(g);
  prob.grad_thickness = -p.eps() * grad(zeta);
  prob.top_data = ScalarField(g);
  prob.bottom_data = ScalarField(g);
  std::vector<ScalarField> levels;
  for (const auto& level : st.upper.phi) levels.push_back(level);
  const StripFluxes f = strip_fluxes(prob, levels);
  const ChebyshevLine cheb(strip.nz);
  VectorField v(g);
  for (int j = 0; j < strip.nz; ++j) v.add_scaled(cheb.w[j], f.fx[j]);
  st.v = (1.0 / std::sqrt(p.mu())) * v;

  st.lower = solve_lower(p, zeta, st.g, strip, opt);
  st.h = st.lower.trace_grad;
  return st;
}

ScalarField oracle_g(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                     const StripGrid& strip, const OracleOptions& opt) {
  return solve_upper(p, zeta, psi1, strip, opt).neumann_data;
}

VectorField oracle_v(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                     const StripGrid& strip, const OracleOptions& opt) {
  return oracle_evaluate(p, zeta, psi1, strip, opt).v;
}

VectorField oracle_h(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                     const StripGrid& strip, const OracleOptions& opt) {
  return oracle_evaluate(p, zeta, psi1, strip, opt).h;
}

ScalarField nonlinear_n(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                        const OracleState& st) {
  const double mu = p.mu();
  const double eps = p.eps();
  const double gamma = p.gamma();
  const VectorField gz = grad(zeta);
  const VectorField gpsi = grad(psi1);
  const ScalarField gz_gpsi = dot(gz, gpsi);
  const ScalarField gz_h = dot(gz, st.h);
  const ScalarField gz2 = dot(gz, gz);
  ScalarField out(zeta.grid());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double gm = st.g[i] / mu;
    const double a = gm + eps * gz_gpsi[i];
    const double b = gm + eps * gz_h[i];
    out[i] = mu * (gamma * a * a - b * b) / (2.0 * (1.0 + mu * eps * eps * gz2[i]));
  }
  return out;
}

ScalarField nonlinear_n(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                        const StripGrid& strip, const OracleOptions& opt) {
  return nonlinear_n(p, zeta, psi1, oracle_evaluate(p, zeta, psi1, strip, opt));
}

FullRhs full_rhs(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                 const OracleState& st) {
  const double eps = p.eps();
  const double gamma = p.gamma();
  const VectorField gpsi = grad(psi1);
  FullRhs r;
  r.dzeta_dt = (1.0 / p.mu()) * st.g;
  ScalarField bern = dot(st.h, st.h);
  bern.add_scaled(-gamma, dot(gpsi, gpsi));
  ScalarField potential = 0.5 * eps * bern;
  potential.add_scaled(eps, nonlinear_n(p, zeta, psi1, st));
  r.dv_dt = -(1.0 - gamma) * grad(zeta) - grad(potential);
  return r;
}

FullRhs full_rhs(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                 const StripGrid& strip, const OracleOptions& opt) {
  return full_rhs(p, zeta, psi1, oracle_evaluate(p, zeta, psi1, strip, opt));
}

VectorField v_from_psi(const RegimeParams& p, const ScalarField& psi1, const OracleState& st) {
  return st.h - p.gamma() * grad(psi1);
}

VectorField v_from_psi(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                       const StripGrid& strip, const OracleOptions& opt) {
  return v_from_psi(p, psi1, oracle_evaluate(p, zeta, psi1, strip, opt));
}

void export_solution(const std::string& prefix, const OracleSolution& sol, const RegimeParams& p,
                     const std::string& layer) {
  write_binary(prefix + ".bin", sol.phi);
  std::ofstream os(prefix + ".meta.txt");
  if (!os) throw Error("cannot write " + prefix + ".meta.txt");
  const SpectralGrid& g = sol.strip.horizontal;
  os.precision(17);
  os << "layer = " << layer << '\n';
  os << "gamma = " << p.gamma() << "\ndelta = " << p.delta() << "\neps = " << p.eps()
     << "\nmu = " << p.mu() << '\n';
  os << "dim = " << g.dim() << "\npoints = " << g.points(0);
  if (g.dim() == 2) os << ", " << g.points(1);
  os << "\nlengths = " << g.length(0);
  if (g.dim() == 2) os << ", " << g.length(1);
  os << "\nnz = " << sol.strip.nz << '\n';
  os << "residual_norm = " << sol.residual_norm << '\n';
  os << "iterations = " << sol.iterations << '\n';
  os << "compatibility_defect = " << sol.compatibility_defect << '\n';
  os << "layout = levels top to bottom, Chebyshev-Gauss-Lobatto nodes s_j = (cos(pi j/(nz-1)) - 1)/2\n";
}

}  // namespace iwave
