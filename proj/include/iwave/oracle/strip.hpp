#pragma once

#include <vector>

#include "iwave/spectral/field.hpp"

namespace iwave {

// Variable-coefficient elliptic problem on the flattened strip
//   X in torus, s in [-1, 0],  z = a(X) + s·H(X),
// obtained from μΔ_X Φ + ∂_z²Φ = 0 by the change of variables. With
// ∇Z = ∇a + s∇H the conormal fluxes are
//   F_X = μH∇u - μ∇Z ∂_s u
//   F_s = -μ∇Z·∇u + (1 + μ|∇Z|²)/H ∂_s u
// and the interior equation is ∇·F_X + ∂_s F_s = 0. F_s at a boundary is the
// upward conormal derivative (-μ∇z_b·∇Φ + ∂_zΦ) of the physical problem.
//
// Horizontal Nyquist modes are excluded from the unknown: derivatives vanish
// there, so those modes carry no information and are pinned to zero.
enum class BoundaryKind { dirichlet, flux };

struct StripProblem {
  SpectralGrid grid;
  int nz = 32;
  double mu = 1.0;
  ScalarField thickness;        // H > 0
  VectorField grad_base;        // ∇a
  VectorField grad_thickness;   // ∇H
  BoundaryKind top = BoundaryKind::flux;
  BoundaryKind bottom = BoundaryKind::flux;
  ScalarField top_data;         // value or flux at s = 0
  ScalarField bottom_data;      // value or flux at s = -1
};

struct StripSolverOptions {
  double tol = 1e-14;
  int max_iterations = 400;
  int restart = 200;
  int max_cycles = 4;
  // Relative true residual above which the solve is reported as failed.
  double accept = 1e-7;
};

struct StripSolution {
  // u at every node, index 0 is s = 0.
  std::vector<ScalarField> levels;
  double residual_norm = 0.0;
  int iterations = 0;
  // Multiplier absorbing the mean of the flux data in pure-flux problems.
  double border_multiplier = 0.0;
};

struct StripFluxes {
  std::vector<VectorField> fx;
  std::vector<ScalarField> fs;
};

// Pure-flux problems are solved with a bordered system fixing mean(u(·,0)) = 0
// and a constant multiplier added to the top flux equation. Throws
// SolveFailure when the true relative residual exceeds options.accept.
StripSolution solve_strip(const StripProblem& problem, const StripSolverOptions& options = {});

StripFluxes strip_fluxes(const StripProblem& problem, const std::vector<ScalarField>& levels);

// Relative discrete residual ‖b - A u‖/‖b‖ of a candidate solution.
double strip_residual(const StripProblem& problem, const StripSolution& solution);

}  // namespace iwave
