#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iwave/models/models.hpp"

namespace iwave {

// Classical fourth-order Runge–Kutta step.
ModelState step_rk4(const ModelId& model, const RegimeParams& p, const ModelState& s, double dt);

// Rough bound on the largest linear frequency on the grid, from the linearized
// right-hand side applied to the highest resolved modes. Used only to warn.
double linear_frequency_bound(const ModelId& model, const RegimeParams& p, const SpectralGrid& grid);

struct Diagnostics {
  double t = 0.0;
  double zeta_mean = 0.0;
  std::vector<double> v_mean;
  double zeta_l2 = 0.0;
  double zeta_h1 = 0.0;
  double v_l2 = 0.0;
  double h1_min = 0.0;
  double h2_min = 0.0;
};

Diagnostics diagnose(const RegimeParams& p, const ModelState& s, double t);

struct SimulationOptions {
  // Abort when 1-εζ or 1+ε₂ζ drops below this value.
  double depth_floor = 1e-3;
  // Warn when dt exceeds safety / linear_frequency_bound.
  double safety = 2.5;
  // Directory for the run record; empty keeps everything in memory.
  std::string output_dir;
  bool keep_snapshots = false;
};

struct SimulationRecord {
  ModelId model;
  RegimeParams params{0.0, 1.0, 0.0, 1.0};
  double dt = 0.0;
  double t_end = 0.0;
  int steps = 0;
  std::vector<Diagnostics> diagnostics;
  std::vector<ModelState> snapshots;  // only with keep_snapshots
  ModelState final_state;
  bool aborted = false;
  std::string abort_reason;
};

// Integrates from t = 0 to t_end (rounded to whole steps). Diagnostics and
// snapshots are taken every output_every steps and at the end. Aborts with a
// flagged record on a non-finite state or a depth-floor crossing.
SimulationRecord simulate(const ModelId& model, const RegimeParams& p, const ModelState& initial, double t_end,
                          double dt, int output_every, const SimulationOptions& opt = {});

// Writes metadata.txt, diagnostics.csv and snapshot_<n>.bin into dir.
void write_record(const std::string& dir, const SimulationRecord& rec, const SpectralGrid& grid,
                  const std::vector<ModelState>& snapshots);

// Initial data.
ScalarField gaussian_hump(const SpectralGrid& grid, double amplitude, double width);
ScalarField sech2_hump(const SpectralGrid& grid, double amplitude, double width);
// Sum of random Fourier modes with |index| <= max_mode, zero mean, scaled to
// the given sup norm. Deterministic in seed.
ScalarField random_band_limited(const SpectralGrid& grid, int max_mode, double amplitude, std::uint64_t seed);
// Unidirectional velocity c·ζ·e_x for the leading-order wave speed c.
VectorField unidirectional_velocity(const RegimeParams& p, const ScalarField& zeta);

}  // namespace iwave
