#pragma once

#include "iwave/operators/params.hpp"
#include "iwave/spectral/field.hpp"

namespace iwave {

// T_μ = tanh(√μ|D|)
ScalarField t_mu(double mu, const ScalarField& f);
// |D| coth(√μ₂|D|), equal to 1/√μ₂ at k = 0.
ScalarField lambda_coth(double mu2, const ScalarField& f);
VectorField lambda_coth(double mu2, const VectorField& f);

// Π = k kᵀ/|k|². The zero mode and the Nyquist modes map to 0, so Π projects
// onto mean-zero gradient fields and Π∘Π = Π.
VectorField projector_pi(const VectorField& v);

// 𝒯₀ = tanh(√μ|D|)/|D| componentwise, equal to √μ at k = 0.
ScalarField t0_mu(double mu, const ScalarField& f);
VectorField t0_mu(double mu, const VectorField& w);

// 𝒯₁[ζ]W = -∇𝒯₀(ζ·𝒯₀(∇·W)), product dealiased.
VectorField t1_mu(double mu, const ScalarField& zeta, const VectorField& w);

struct QFrakOptions {
  double tol = 1e-12;
  int max_terms = 200;
  // Series refused above this sup|ε₂ζ|.
  double sup_guard = 0.9;
};

struct QFrakResult {
  VectorField value;
  int terms = 0;
  double last_term_norm = 0.0;
};

// 𝔔[a]W = Σ_n (-1)^n (Π(a Π·))^n (ΠW) with a = ε₂ζ. Products are pointwise
// so the partial sums solve the discrete identity Π((1+a)V) = ΠW exactly.
// Stops when a term's L² norm drops below tol·max(1, ‖ΠW‖). Throws
// ContractionFailure when sup|a| exceeds the guard, when term norms stop
// decreasing, or when max_terms is reached.
QFrakResult q_frak(const ScalarField& a, const VectorField& w, const QFrakOptions& opt = {});

// One-dimensional closed form on the torus: V = (ΠW + c)/(1+a) with c fixed
// by mean(V) = 0.
VectorField q_frak_closed_1d(const ScalarField& a, const VectorField& w);

// B(ζ, ∇ψ₁) entering the FD/FD expansion of H.
VectorField bilinear_b(const RegimeParams& p, const ScalarField& zeta, const VectorField& grad_psi1);

// V ≈ 𝒯₀∇ψ + ε√μ(-ζ∇ψ + 𝒯₁[ζ]∇ψ).
VectorField expand_v_small_amplitude(const RegimeParams& p, const ScalarField& zeta,
                                     const ScalarField& psi1);

// Approximation of √μ·V: order 1 gives μ(1-εζ)∇ψ, order 2 adds (μ²/3)Δ∇ψ.
VectorField expand_v_shallow(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                             int order);

enum class HRegime { FDFD, BFD, BB, SWSW, SWSA, ILW, BO };

const char* regime_name(HRegime r);

// Closed-form approximation of H[εζ]ψ₁ in the given regime.
VectorField expand_h(const RegimeParams& p, const ScalarField& zeta, const ScalarField& psi1,
                     HRegime regime, const QFrakOptions& qopt = {});

}  // namespace iwave
