#include "iwave/oracle/chebyshev.hpp"

#include <cmath>
#include <numbers>

#include "iwave/error.hpp"

namespace iwave {

ChebyshevLine::ChebyshevLine(int n_) : n(n_), s(n_), d(n_, n_), d2(n_, n_), w(n_, 0.0) {
  if (n < 3) throw Error("Chebyshev line needs at least 3 nodes");
  const int N = n - 1;
  const double pi = std::numbers::pi;
  std::vector<double> t(n);
  for (int j = 0; j < n; ++j) {
    t[j] = std::cos(pi * j / N);
    s[j] = 0.5 * (t[j] - 1.0);
  }
  // Differentiation in t, off-diagonal closed form, diagonal by row sums.
  Eigen::MatrixXd dt = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double ci = (i == 0 || i == N) ? 2.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double cj = (j == 0 || j == N) ? 2.0 : 1.0;
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      dt(i, j) = (ci / cj) * sign / (t[i] - t[j]);
    }
  }
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) acc += dt(i, j);
    }
    dt(i, i) = -acc;
  }
  d = 2.0 * dt;
  d2 = d * d;

  // Clenshaw–Curtis on [-1, 1], then halved for [-1, 0].
  std::vector<double> wt(n, 0.0);
  std::vector<double> v(n, 1.0);
  if (N % 2 == 0) {
    wt[0] = wt[N] = 1.0 / (N * N - 1.0);
    for (int k = 1; k < N / 2; ++k) {
      for (int j = 1; j < N; ++j) v[j] -= 2.0 * std::cos(2.0 * k * pi * j / N) / (4.0 * k * k - 1.0);
    }
    for (int j = 1; j < N; ++j) v[j] -= std::cos(N * pi * j / N) / (N * N - 1.0);
  } else {
    wt[0] = wt[N] = 1.0 / (static_cast<double>(N) * N);
    for (int k = 1; k <= (N - 1) / 2; ++k) {
      for (int j = 1; j < N; ++j) v[j] -= 2.0 * std::cos(2.0 * k * pi * j / N) / (4.0 * k * k - 1.0);
    }
  }
  for (int j = 1; j < N; ++j) wt[j] = 2.0 * v[j] / N;
  for (int j = 0; j < n; ++j) w[j] = 0.5 * wt[j];
}

}  // namespace iwave
