#include "iwave/oracle/strip.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <sstream>

#include <Eigen/Dense>
#include <unsupported/Eigen/IterativeSolvers>

#include "iwave/error.hpp"
#include "iwave/oracle/chebyshev.hpp"

namespace iwave {
namespace {

using cplx = std::complex<double>;

class StripOperator {
 public:
  explicit StripOperator(const StripProblem& p)
      : p_(p), g_(p.grid), cheb_(p.nz), n_(g_.size()), ns_(g_.spectral_size()), nz_(p.nz),
        dim_(g_.dim()), bordered_(p.top == BoundaryKind::flux && p.bottom == BoundaryKind::flux) {
    if (nz_ < 8) throw Error("strip needs at least 8 vertical nodes");
    if (p.thickness.min() <= 0.0) throw DepthViolation("strip thickness must be positive");
    gz_.resize(nz_);
    a22_.resize(nz_);
    for (int j = 0; j < nz_; ++j) {
      const double s = cheb_.s[j];
      gz_[j].resize(dim_);
      for (int a = 0; a < dim_; ++a) {
        gz_[j][a].resize(n_);
        for (std::size_t i = 0; i < n_; ++i) gz_[j][a][i] = p.grad_base[a][i] + s * p.grad_thickness[a][i];
      }
      a22_[j].resize(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        double g2 = 0.0;
        for (int a = 0; a < dim_; ++a) g2 += gz_[j][a][i] * gz_[j][a][i];
        a22_[j][i] = (1.0 + p.mu * g2) / p.thickness[i];
      }
    }
    build_blocks();
  }

  Eigen::Index size() const { return static_cast<Eigen::Index>(nz_ * n_ + (bordered_ ? 1 : 0)); }
  bool bordered() const { return bordered_; }
  int nz() const { return nz_; }
  std::size_t points() const { return n_; }

  // Nyquist-free levels and their horizontal gradients.
  struct Work {
    std::vector<std::vector<cplx>> uh;       // [j][mode]
    std::vector<std::vector<double>> u;      // [j][point]
    std::vector<std::vector<std::vector<double>>> gu;  // [j][axis][point]
    std::vector<std::vector<double>> us;     // ∂_s u
    std::vector<std::vector<std::vector<double>>> fx;
    std::vector<std::vector<double>> fs;
  };

  void fluxes(const double* x, Work& w) const {
    const auto& modes = g_.modes();
    w.uh.assign(nz_, std::vector<cplx>(ns_));
    w.u.assign(nz_, std::vector<double>(n_));
    w.gu.assign(nz_, std::vector<std::vector<double>>(dim_, std::vector<double>(n_)));
    std::vector<cplx> tmp(ns_);
    for (int j = 0; j < nz_; ++j) {
      g_.forward(x + j * n_, w.uh[j].data());
      for (std::size_t m = 0; m < ns_; ++m) {
        if (modes[m].nyquist) w.uh[j][m] = 0.0;
      }
      g_.inverse(w.uh[j].data(), w.u[j].data());
      for (int a = 0; a < dim_; ++a) {
        for (std::size_t m = 0; m < ns_; ++m) {
          const double k = modes[m].nyquist ? 0.0 : (a == 0 ? modes[m].kx : modes[m].ky);
          tmp[m] = w.uh[j][m] * cplx(0.0, k);
        }
        g_.inverse(tmp.data(), w.gu[j][a].data());
      }
    }
    w.us.assign(nz_, std::vector<double>(n_, 0.0));
    for (int j = 0; j < nz_; ++j) {
      for (int l = 0; l < nz_; ++l) {
        const double c = cheb_.d(j, l);
        const double* ul = w.u[l].data();
        double* out = w.us[j].data();
        for (std::size_t i = 0; i < n_; ++i) out[i] += c * ul[i];
      }
    }
    const double mu = p_.mu;
    w.fx.assign(nz_, std::vector<std::vector<double>>(dim_, std::vector<double>(n_)));
    w.fs.assign(nz_, std::vector<double>(n_));
    for (int j = 0; j < nz_; ++j) {
      for (std::size_t i = 0; i < n_; ++i) {
        double fs = a22_[j][i] * w.us[j][i];
        for (int a = 0; a < dim_; ++a) {
          const double gz = gz_[j][a][i];
          w.fx[j][a][i] = mu * p_.thickness[i] * w.gu[j][a][i] - mu * gz * w.us[j][i];
          fs -= mu * gz * w.gu[j][a][i];
        }
        w.fs[j][i] = fs;
      }
    }
  }

  void apply(const double* x, double* y) const {
    Work w;
    fluxes(x, w);
    const auto& modes = g_.modes();
    const double lambda = bordered_ ? x[nz_ * n_] : 0.0;
    std::vector<double> row(n_);
    std::vector<cplx> acc(ns_), tmp(ns_), xh(ns_);
    for (int j = 0; j < nz_; ++j) {
      const bool top = j == 0;
      const bool bottom = j == nz_ - 1;
      if (top || bottom) {
        const BoundaryKind kind = top ? p_.top : p_.bottom;
        if (kind == BoundaryKind::dirichlet) {
          row = w.u[j];
        } else {
          row = w.fs[j];
          if (top && bordered_) {
            for (double& r : row) r += lambda;
          }
        }
      } else {
        std::fill(acc.begin(), acc.end(), cplx(0.0));
        for (int a = 0; a < dim_; ++a) {
          g_.forward(w.fx[j][a].data(), tmp.data());
          for (std::size_t m = 0; m < ns_; ++m) {
            const double k = modes[m].nyquist ? 0.0 : (a == 0 ? modes[m].kx : modes[m].ky);
            acc[m] += tmp[m] * cplx(0.0, k);
          }
        }
        g_.inverse(acc.data(), row.data());
        for (int l = 0; l < nz_; ++l) {
          const double c = cheb_.d(j, l);
          const double* fl = w.fs[l].data();
          for (std::size_t i = 0; i < n_; ++i) row[i] += c * fl[i];
        }
      }
      // Nyquist rows act as the identity on the Nyquist content of x.
      g_.forward(row.data(), tmp.data());
      g_.forward(x + j * n_, xh.data());
      for (std::size_t m = 0; m < ns_; ++m) {
        if (modes[m].nyquist) tmp[m] = xh[m];
      }
      g_.inverse(tmp.data(), y + j * n_);
    }
    if (bordered_) y[nz_ * n_] = w.uh[0][0].real();
  }

  void precondition(const double* b, double* x) const {
    const auto& modes = g_.modes();
    std::vector<std::vector<cplx>> bh(nz_, std::vector<cplx>(ns_));
    for (int j = 0; j < nz_; ++j) g_.forward(b + j * n_, bh[j].data());
    const int extra = bordered_ ? 1 : 0;
    Eigen::MatrixXd rhs(nz_ + 1, 2);
    double lambda = 0.0;
    for (std::size_t m = 0; m < ns_; ++m) {
      if (modes[m].nyquist) continue;
      const bool zero_mode = modes[m].norm2() == 0.0;
      const int size = nz_ + (zero_mode ? extra : 0);
      rhs.resize(size, 2);
      for (int j = 0; j < nz_; ++j) {
        rhs(j, 0) = bh[j][m].real();
        rhs(j, 1) = bh[j][m].imag();
      }
      if (size > nz_) {
        rhs(nz_, 0) = b[nz_ * n_];
        rhs(nz_, 1) = 0.0;
      }
      const Eigen::PartialPivLU<Eigen::MatrixXd>& lu =
          zero_mode ? zero_block_ : blocks_.at(modes[m].norm2());
      const Eigen::MatrixXd sol = lu.solve(rhs);
      for (int j = 0; j < nz_; ++j) bh[j][m] = cplx(sol(j, 0), sol(j, 1));
      if (size > nz_) lambda = sol(nz_, 0);
    }
    for (int j = 0; j < nz_; ++j) g_.inverse(bh[j].data(), x + j * n_);
    if (bordered_) x[nz_ * n_] = lambda;
  }

 private:
  Eigen::MatrixXd block(double k2, bool border) const {
    const double hbar = p_.thickness.mean();
    const int size = nz_ + (border ? 1 : 0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
    for (int j = 0; j < nz_; ++j) {
      const bool top = j == 0;
      const bool bottom = j == nz_ - 1;
      if (top || bottom) {
        const BoundaryKind kind = top ? p_.top : p_.bottom;
        if (kind == BoundaryKind::dirichlet) {
          a(j, j) = 1.0;
        } else {
          a.block(j, 0, 1, nz_) = cheb_.d.row(j) / hbar;
        }
      } else {
        a.block(j, 0, 1, nz_) = cheb_.d2.row(j) / hbar;
        a(j, j) -= p_.mu * hbar * k2;
      }
    }
    if (border) {
      a(0, nz_) = 1.0;
      a(nz_, 0) = 1.0;
    }
    return a;
  }

  void build_blocks() {
    for (const auto& k : g_.modes()) {
      if (k.nyquist) continue;
      const double k2 = k.norm2();
      if (k2 == 0.0 || blocks_.count(k2)) continue;
      blocks_.emplace(k2, Eigen::PartialPivLU<Eigen::MatrixXd>(block(k2, false)));
    }
    zero_block_ = Eigen::PartialPivLU<Eigen::MatrixXd>(block(0.0, bordered_));
  }

  const StripProblem& p_;
  SpectralGrid g_;
  ChebyshevLine cheb_;
  std::size_t n_;
  std::size_t ns_;
  int nz_;
  int dim_;
  bool bordered_;
  std::vector<std::vector<std::vector<double>>> gz_;
  std::vector<std::vector<double>> a22_;
  std::map<double, Eigen::PartialPivLU<Eigen::MatrixXd>> blocks_;
  Eigen::PartialPivLU<Eigen::MatrixXd> zero_block_;
};

class StripMatrix;

}  // namespace
}  // namespace iwave

namespace Eigen::internal {
template <>
struct traits<iwave::StripMatrix> : public traits<Eigen::SparseMatrix<double>> {};
}  // namespace Eigen::internal

namespace iwave {
namespace {

class StripMatrix : public Eigen::EigenBase<StripMatrix> {
 public:
  using Scalar = double;
  using RealScalar = double;
  using StorageIndex = int;
  enum { ColsAtCompileTime = Eigen::Dynamic, MaxColsAtCompileTime = Eigen::Dynamic, IsRowMajor = false };

  explicit StripMatrix(const StripOperator& op) : op_(&op) {}
  Eigen::Index rows() const { return op_->size(); }
  Eigen::Index cols() const { return op_->size(); }

  template <typename Rhs>
  Eigen::Product<StripMatrix, Rhs, Eigen::AliasFreeProduct> operator*(const Eigen::MatrixBase<Rhs>& x) const {
    return Eigen::Product<StripMatrix, Rhs, Eigen::AliasFreeProduct>(*this, x.derived());
  }

  const StripOperator& op() const { return *op_; }

 private:
  const StripOperator* op_;
};

class StripPreconditioner {
 public:
  StripPreconditioner() = default;
  template <typename M>
  StripPreconditioner& analyzePattern(const M&) { return *this; }
  template <typename M>
  StripPreconditioner& factorize(const M&) { return *this; }
  template <typename M>
  StripPreconditioner& compute(const M& m) {
    op_ = &m.op();
    return *this;
  }
  template <typename Rhs>
  Eigen::VectorXd solve(const Rhs& b) const {
    const Eigen::VectorXd bb = b;
    Eigen::VectorXd x(bb.size());
    op_->precondition(bb.data(), x.data());
    return x;
  }
  Eigen::ComputationInfo info() { return Eigen::Success; }

 private:
  const StripOperator* op_ = nullptr;
};

}  // namespace
}  // namespace iwave

namespace Eigen::internal {
template <typename Rhs>
struct generic_product_impl<iwave::StripMatrix, Rhs, SparseShape, DenseShape, GemvProduct>
    : generic_product_impl_base<iwave::StripMatrix, Rhs,
                                generic_product_impl<iwave::StripMatrix, Rhs>> {
  using Scalar = typename Product<iwave::StripMatrix, Rhs>::Scalar;
  template <typename Dest>
  static void scaleAndAddTo(Dest& dst, const iwave::StripMatrix& lhs, const Rhs& rhs, const Scalar& alpha) {
    const Eigen::VectorXd x = rhs;
    Eigen::VectorXd y(x.size());
    lhs.op().apply(x.data(), y.data());
    dst.noalias() += alpha * y;
  }
};
}  // namespace Eigen::internal

namespace iwave {
namespace {

Eigen::VectorXd build_rhs(const StripProblem& p, const StripOperator& op) {
  const std::size_t n = op.points();
  const int nz = op.nz();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(op.size());
  const auto& modes = p.grid.modes();
  std::vector<cplx> tmp(p.grid.spectral_size());
  auto place = [&](const ScalarField& data, int level) {
    p.grid.forward(data.data(), tmp.data());
    for (std::size_t m = 0; m < tmp.size(); ++m) {
      if (modes[m].nyquist) tmp[m] = 0.0;
    }
    p.grid.inverse(tmp.data(), b.data() + level * n);
  };
  place(p.top_data, 0);
  place(p.bottom_data, nz - 1);
  return b;
}

void check_problem(const StripProblem& p) {
  const SpectralGrid& g = p.grid;
  require_same_grid(g, p.thickness.grid());
  require_same_grid(g, p.top_data.grid());
  require_same_grid(g, p.bottom_data.grid());
  require_same_grid(g, p.grad_base.grid());
  require_same_grid(g, p.grad_thickness.grid());
  if (!(p.mu > 0.0)) throw Error("strip problem needs mu > 0");
}

}  // namespace

StripSolution solve_strip(const StripProblem& problem, const StripSolverOptions& options) {
  check_problem(problem);
  const StripOperator op(problem);
  const Eigen::VectorXd b = build_rhs(problem, op);
  const std::size_t n = op.points();
  StripSolution sol;
  const double bnorm = b.norm();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(op.size());
  if (bnorm > 0.0) {
    const StripMatrix a(op);
    Eigen::GMRES<StripMatrix, StripPreconditioner> gmres;
    gmres.set_restart(options.restart);
    gmres.setMaxIterations(options.max_iterations);
    gmres.setTolerance(options.tol);
    gmres.compute(a);
    Eigen::VectorXd ax(op.size());
    for (int cycle = 0; cycle < options.max_cycles; ++cycle) {
      x = gmres.solveWithGuess(b, x);
      sol.iterations += static_cast<int>(gmres.iterations());
      op.apply(x.data(), ax.data());
      sol.residual_norm = (b - ax).norm() / bnorm;
      if (sol.residual_norm < 10.0 * options.tol) break;
    }
    if (!(sol.residual_norm <= options.accept)) {
      std::ostringstream os;
      os << "strip solve failed: relative residual " << sol.residual_norm << " after "
         << sol.iterations << " GMRES iterations";
      throw SolveFailure(os.str());
    }
  }
  for (int j = 0; j < op.nz(); ++j) {
    sol.levels.emplace_back(problem.grid, std::vector<double>(x.data() + j * n, x.data() + (j + 1) * n));
  }
  if (op.bordered()) sol.border_multiplier = x[op.nz() * n];
  return sol;
}

StripFluxes strip_fluxes(const StripProblem& problem, const std::vector<ScalarField>& levels) {
  check_problem(problem);
  const StripOperator op(problem);
  const std::size_t n = op.points();
  std::vector<double> x(op.size(), 0.0);
  for (int j = 0; j < op.nz(); ++j) std::copy(levels[j].data(), levels[j].data() + n, x.begin() + j * n);
  StripOperator::Work w;
  op.fluxes(x.data(), w);
  StripFluxes out;
  for (int j = 0; j < op.nz(); ++j) {
    std::vector<ScalarField> comps;
    for (int a = 0; a < problem.grid.dim(); ++a) comps.emplace_back(problem.grid, w.fx[j][a]);
    out.fx.emplace_back(std::move(comps));
    out.fs.emplace_back(problem.grid, w.fs[j]);
  }
  return out;
}

double strip_residual(const StripProblem& problem, const StripSolution& solution) {
  check_problem(problem);
  const StripOperator op(problem);
  const std::size_t n = op.points();
  const Eigen::VectorXd b = build_rhs(problem, op);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(op.size());
  for (int j = 0; j < op.nz(); ++j) {
    std::copy(solution.levels[j].data(), solution.levels[j].data() + n, x.data() + j * n);
  }
  if (op.bordered()) x[op.nz() * n] = solution.border_multiplier;
  Eigen::VectorXd ax(op.size());
  op.apply(x.data(), ax.data());
  const double bnorm = b.norm();
  return bnorm > 0.0 ? (b - ax).norm() / bnorm : (ax).norm();
}

}  // namespace iwave
