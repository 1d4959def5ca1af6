#include "iwave/operators/params.hpp"

#include <cmath>
#include <sstream>

#include "iwave/error.hpp"

namespace iwave {

RegimeParams::RegimeParams(double gamma, double delta, double eps, double mu)
    : gamma_(gamma), delta_(delta), eps_(eps), mu_(mu) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw Error("gamma must be >= 0");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw Error("delta must be > 0");
  if (!(eps >= 0.0 && eps <= 1.0)) throw Error("eps must lie in [0, 1]");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw Error("mu must be > 0");
}

std::string RegimeParams::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "gamma=" << gamma_ << " delta=" << delta_ << " eps=" << eps_ << " mu=" << mu_
     << " eps2=" << eps2() << " mu2=" << mu2();
  return os.str();
}

ScalarField upper_thickness(const RegimeParams& p, const ScalarField& zeta) {
  return 1.0 + (-p.eps()) * zeta;
}

ScalarField lower_thickness(const RegimeParams& p, const ScalarField& zeta) {
  return 1.0 + p.eps2() * zeta;
}

DepthBounds DepthBounds::of(const RegimeParams& p, const ScalarField& zeta) {
  return {upper_thickness(p, zeta).min(), lower_thickness(p, zeta).min()};
}

void DepthBounds::require(double h1_floor, double h2_floor) const {
  if (h1min < h1_floor) {
    std::ostringstream os;
    os << "upper layer thickness " << h1min << " below floor " << h1_floor;
    throw DepthViolation(os.str());
  }
  if (h2min < h2_floor) {
    std::ostringstream os;
    os << "lower layer thickness " << h2min << " below floor " << h2_floor;
    throw DepthViolation(os.str());
  }
}

}  // namespace iwave
