#pragma once

#include <stdexcept>
#include <string>

namespace iwave {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Neumann series for the 𝔔 operator did not contract.
class ContractionFailure : public Error {
 public:
  ContractionFailure(const std::string& what, double sup_amplitude)
      : Error(what), sup_amplitude_(sup_amplitude) {}
  double sup_amplitude() const { return sup_amplitude_; }

 private:
  double sup_amplitude_;
};

// A layer thickness fell below its positivity floor.
class DepthViolation : public Error {
 public:
  using Error::Error;
};

class SolveFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace iwave
