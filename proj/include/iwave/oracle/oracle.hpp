#pragma once

#include <string>
#include <vector>

#include "iwave/operators/params.hpp"
#include "iwave/oracle/strip.hpp"
#include "iwave/spectral/field.hpp"

namespace iwave {

struct StripGrid {
  SpectralGrid horizontal;
  int nz = 32;

  // Throws iwave::Error when nz < 8.
  static StripGrid make(const SpectralGrid& horizontal, int nz);
  // 32 nodes in one dimension, 24 in two.
  static StripGrid standard(const SpectralGrid& horizontal);
};

struct OracleSolution {
  StripGrid strip;
  // Potential at every node, level 0 at the top of the flattened strip.
  std::vector<ScalarField> phi;
  ScalarField trace;              // potential on the interface
  VectorField trace_grad;         // horizontal gradient of the interface trace
  ScalarField neumann_data;       // flux supplied (lower) or computed (upper)
  double residual_norm = 0.0;
  int iterations = 0;
  // Mean removed from the Neumann data before a lower-layer solve.
  double compatibility_defect = 0.0;
};

struct OracleOptions {
  StripSolverOptions solver;
  // Relative size of the removed Neumann-data mean that is reported as an
  // upstream error.
  double compatibility_limit = 1e-8;
  double depth_floor = 1e-3;
};

// Upper layer (rigid lid above, interface below) with Dirichlet data ψ₁.
// neumann_data holds G[εζ]ψ₁ = F_s on the interface.
OracleSolution solve_upper(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                           const StripGrid& strip, const OracleOptions& opt = {});

// Lower layer with conormal flux g on the interface and a flat bottom.
// The gauge is mean(phi) = 0 over the strip.
OracleSolution solve_lower(const RegimeParams& p, const ScalarField& zeta, const ScalarField& g,
                           const StripGrid& strip, const OracleOptions& opt = {});

// Every oracle quantity for one (ζ, ψ₁).
struct OracleState {
  ScalarField g;        // G[εζ]ψ₁
  VectorField v;        // V[εζ]ψ₁
  VectorField h;        // H[εζ]ψ₁
  OracleSolution upper;
  OracleSolution lower;
};

OracleState oracle_evaluate(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                            const StripGrid& strip, const OracleOptions& opt = {});

ScalarField oracle_g(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                     const StripGrid& strip, const OracleOptions& opt = {});
VectorField oracle_v(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                     const StripGrid& strip, const OracleOptions& opt = {});
VectorField oracle_h(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                     const StripGrid& strip, const OracleOptions& opt = {});

// μ[γ(G/μ + ε∇ζ·∇ψ)² - (G/μ + ε∇ζ·H)²] / (2(1 + με²|∇ζ|²)), pointwise.
// Inputs should be band-limited to half the Nyquist wavenumber.
ScalarField nonlinear_n(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                        const OracleState& state);
ScalarField nonlinear_n(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                        const StripGrid& strip, const OracleOptions& opt = {});

struct FullRhs {
  ScalarField dzeta_dt;
  VectorField dv_dt;
};

// Time derivatives of (ζ, v) for the full two-layer system.
FullRhs full_rhs(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                 const OracleState& state);
FullRhs full_rhs(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                 const StripGrid& strip, const OracleOptions& opt = {});

// v = H[εζ]ψ₁ - γ∇ψ₁
VectorField v_from_psi(const RegimeParams& p, const ScalarField& psi1, const OracleState& state);
VectorField v_from_psi(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                       const StripGrid& strip, const OracleOptions& opt = {});

// Writes <prefix>.bin (potential levels) and <prefix>.meta.txt.
void export_solution(const std::string& prefix, const OracleSolution& sol, const RegimeParams& p,
                     const std::string& layer);

}  // namespace iwave
