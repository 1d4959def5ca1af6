#pragma once

#include <cmath>

// Scalar Fourier symbols as functions of |k| >= 0, each with its analytic
// value at k = 0.
namespace iwave::symbols {

// tanh(√μ k)
inline double tanh_mu(double mu, double k) { return std::tanh(std::sqrt(mu) * k); }

// tanh(√μ k)/k, → √μ
inline double t0(double mu, double k) {
  return k == 0.0 ? std::sqrt(mu) : std::tanh(std::sqrt(mu) * k) / k;
}

// k coth(√μ₂ k), → 1/√μ₂
inline double kcoth(double mu2, double k) {
  return k == 0.0 ? 1.0 / std::sqrt(mu2) : k / std::tanh(std::sqrt(mu2) * k);
}

// k² coth²(√μ₂ k), → 1/μ₂
inline double k2coth2(double mu2, double k) {
  const double v = kcoth(mu2, k);
  return v * v;
}

// tanh(√μ k)/tanh(√μ₂ k), → √(μ/μ₂) = δ
inline double tanh_ratio(double mu, double mu2, double k) {
  return k == 0.0 ? std::sqrt(mu / mu2) : std::tanh(std::sqrt(mu) * k) / std::tanh(std::sqrt(mu2) * k);
}

}  // namespace iwave::symbols
