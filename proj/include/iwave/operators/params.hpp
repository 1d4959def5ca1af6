#pragma once

#include <string>

#include "iwave/spectral/field.hpp"

namespace iwave {

// Dimensionless two-layer parameters. eps2 and mu2 are derived on demand.
class RegimeParams {
 public:
  // Throws iwave::Error unless gamma >= 0, delta > 0, eps in [0,1], mu > 0.
  RegimeParams(double gamma, double delta, double eps, double mu);

  double gamma() const { return gamma_; }
  double delta() const { return delta_; }
  double eps() const { return eps_; }
  double mu() const { return mu_; }
  double eps2() const { return eps_ * delta_; }
  double mu2() const { return mu_ / (delta_ * delta_); }

  RegimeParams with_eps(double eps) const { return {gamma_, delta_, eps, mu_}; }
  RegimeParams with_mu(double mu) const { return {gamma_, delta_, eps_, mu}; }
  RegimeParams with_gamma(double gamma) const { return {gamma, delta_, eps_, mu_}; }
  RegimeParams with_delta(double delta) const { return {gamma_, delta, eps_, mu_}; }

  std::string describe() const;

 private:
  double gamma_;
  double delta_;
  double eps_;
  double mu_;
};

struct DepthBounds {
  double h1min = 0.0;  // inf of 1 - eps*zeta
  double h2min = 0.0;  // inf of 1 + eps2*zeta

  static DepthBounds of(const RegimeParams& p, const ScalarField& zeta);
  // Throws DepthViolation when a thickness drops below its floor.
  void require(double h1_floor, double h2_floor) const;
};

// h1 = 1 - eps*zeta and h2 = 1 + eps2*zeta.
ScalarField upper_thickness(const RegimeParams& p, const ScalarField& zeta);
ScalarField lower_thickness(const RegimeParams& p, const ScalarField& zeta);

}  // namespace iwave
