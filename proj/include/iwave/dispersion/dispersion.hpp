#pragma once

#include <vector>

#include "iwave/models/models.hpp"
#include "iwave/operators/params.hpp"

namespace iwave {

struct DispersionSample {
  double k = 0.0;
  double omega2 = 0.0;
  bool wellposed = true;  // omega2 >= 0
};

// Full two-layer relation
//   ω² = (1-γ)(k/√μ) T₁T₂/(T₁ + γT₂),  T₁ = tanh(√μk), T₂ = tanh(√μ₂k).
DispersionSample omega2_full(const RegimeParams& p, double k);

// Boussinesq/full-dispersion family:
//   ω² = ((1-γ)/γ) k²(1-μck²)[1 - (√μ/γ)k coth(√μ₂k) - μk²(a - coth²(√μ₂k)/γ²)]
//        / ((1+μbk²)(1+μdk²))
// with k·coth and k²coth² evaluated jointly.
DispersionSample omega2_bfd(const RegimeParams& p, const BoussinesqCoeffs& c, double k);

// Boussinesq/Boussinesq family:
//   ω² = k²(1/(γ+δ) - μak²)(1-γ-μck²) / ((1+μbk²)(1+μdk²)).
// With gamma_factor the last factor becomes (1-γ)(1-μck²).
DispersionSample omega2_bb(const RegimeParams& p, const BoussinesqCoeffs& c, double k,
                           bool gamma_factor = false);

// Linear symbols derived here from the linearized systems (one plane wave,
// v parallel to k):
//   SW/SW:  ω² = (1-γ)k²/(γ+δ)
//   SW/FD:  ω² = ((1-γ)/γ) k² (1 - (√μ/γ)L(k))
//   ILW:    ω² = ((1-γ)/γ) k² (1 - (1-α)(√μ/γ)L(k)) / (1 + α(√μ/γ)L(k))
// with L(k) = k coth(√μ₂k), or L(k) = k for infinite depth.
DispersionSample omega2_swsw(const RegimeParams& p, double k);
DispersionSample omega2_swfd(const RegimeParams& p, double k);
DispersionSample omega2_ilw(const RegimeParams& p, double alpha, double k, bool infinite_depth);

// Regularized Benjamin–Ono, a first-order equation with signed frequency
//   ω = (ck - s k|k|)/(1 + √μ(α/γ)|k|),  s = (√μ/2γ)c(1-2α),  c = √((1-γ)/γ),
// for ζ = cos(kx - ωt).
double omega_rbo(const RegimeParams& p, double alpha, double k);

// Dispatch on the model; the rbo entry reports ω².
DispersionSample omega2_model(const ModelId& model, const RegimeParams& p, double k);

std::vector<DispersionSample> dispersion_table(const ModelId& model, const RegimeParams& p, double kmin,
                                               double kmax, int count);

struct MeasuredFrequency {
  bool oscillatory = true;
  double omega = 0.0;        // |ω| for oscillatory runs
  double uncertainty = 0.0;  // relative, from the regression residual
  double growth_rate = 0.0;  // for non-oscillatory runs
  double periods = 0.0;      // simulated periods
  int crossings = 0;
};

struct MeasureOptions {
  double amplitude = 1e-6;
  int steps_per_period = 200;
  double periods = 25.0;
  // 1 or 2. In two dimensions the wavevector is (k, k)/√2 on a 32² grid.
  int dim = 1;
  int points = 16;
};

// Runs the model from ζ = A cos(k·x), v = 0 with RK4 and regresses the zero
// crossings of the cos(k·x) projection. When the linearized frequency
// estimate is imaginary the run fits an exponential growth rate instead.
MeasuredFrequency measured_dispersion(const ModelId& model, const RegimeParams& p, double k,
                                      const MeasureOptions& opt = {});

}  // namespace iwave
