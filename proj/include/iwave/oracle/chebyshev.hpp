#pragma once

#include <vector>

#include <Eigen/Dense>

namespace iwave {

// Chebyshev–Gauss–Lobatto collocation on s in [-1, 0]. Node 0 is s = 0 (top),
// node n-1 is s = -1 (bottom).
struct ChebyshevLine {
  int n = 0;
  std::vector<double> s;
  Eigen::MatrixXd d;        // d/ds
  Eigen::MatrixXd d2;       // d²/ds²
  std::vector<double> w;    // Clenshaw–Curtis weights, Σw = 1

  explicit ChebyshevLine(int n);
};

}  // namespace iwave
