#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iwave/models/models.hpp"
#include "iwave/operators/params.hpp"
#include "iwave/oracle/oracle.hpp"

namespace iwave {

// ---------------------------------------------------------------- residuals

struct ResidualNorms {
  double zeta = 0.0;
  double v = 0.0;
  double combined() const;  // sqrt(zeta² + v²)
};

// Substitutes the full system's time derivatives at (ζ, ψ₁) into the model:
// v = H - γ∇ψ₁, (∂_tζ, ∂_tv) from the full right-hand side, ∂_tv_β =
// (1-μβΔ)^{-1}∂_tv where the model stores v_β, and each equation residual is
// taken after its implicit prefactor. Norms are H^s (s = 0 is L²).
ResidualNorms consistency_residual(const ModelId& model, const RegimeParams& p, const ScalarField& zeta,
                                   const ScalarField& psi1, const StripGrid& strip, double sobolev_index = 0.0,
                                   const OracleOptions& opt = {});
ResidualNorms consistency_residual(const ModelId& model, const RegimeParams& p, const ScalarField& zeta,
                                   const ScalarField& psi1, const OracleState& state, double sobolev_index = 0.0);

// ---------------------------------------------------------------- regimes

enum class RegimeCell { Full, FDFD, SWSW, SWFD, BFD, BB, ILW, BO };

const char* regime_cell_name(RegimeCell c);

// Thresholds: a parameter is small when below 0.3; a ∼ b when a/b lies in
// [1/4, 4]; δ ∼ 1 when δ lies in [1/4, 4]. delta = 0 denotes an infinitely
// deep lower layer. Cells are tried in table order and the first match wins;
// anything else is the full-equations cell.
struct RegimeThresholds {
  double small = 0.3;
  double ratio = 4.0;
};

RegimeCell regime_table_check(double eps, double mu, double delta, const RegimeThresholds& t = {});
RegimeCell regime_table_check(const RegimeParams& p, const RegimeThresholds& t = {});

// The model a cell is paired with, if any.
std::optional<ModelKind> regime_model(RegimeCell c);

// ---------------------------------------------------------------- corpus

struct Corpus {
  int dim = 1;
  int points = 256;             // per axis
  double length = 16.0 * M_PI;  // per axis
  int nz = 32;
  int max_mode = 8;
  // Upper bound on sup|ζ|; lowered further so that both layer thicknesses stay
  // at least 0.5 over the whole sweep.
  double zeta_amplitude = 1.0;
  double psi_amplitude = 1.0;
  std::uint64_t zeta_seed = 11;
  std::uint64_t psi_seed = 12;
  // "random" (band-limited) or "gaussian" (ζ a Gaussian hump).
  std::string kind = "random";

  SpectralGrid grid() const;
  StripGrid strip() const;
  // ζ with sup norm min(zeta_amplitude, 0.5 / max(ε, ε₂)) over the sweep.
  ScalarField zeta(const std::vector<RegimeParams>& sweep) const;
  ScalarField psi() const;
};

// ---------------------------------------------------------------- studies

enum class Target { PROP1, PROP2, REMB, CORO2, CORO2BIS, CORO2TER, CORO1, CORO3, THM1, THM2, THM3, THM4, THM5, THM6 };

const char* target_name(Target t);
// Case-insensitive; throws iwave::Error on unknown names.
Target parse_target(const std::string& name);
std::vector<Target> all_targets();

struct TargetInfo {
  Target target = Target::PROP2;
  std::string quantity;  // what is measured
  std::string bound;     // the bound the fitted order is checked against
  std::string variable;  // "eps" or "mu"
  std::vector<double> values;
  double expected_order = 1.0;
  // Pass when the fitted order reaches this value.
  double pass_order = 0.8;
  // Regime ties as "a ~ b" strings, checked on every sweep.
  std::vector<std::string> ties;
};

TargetInfo target_info(Target t);

struct SweepSpec {
  Target target = Target::PROP2;
  std::vector<double> values;  // empty selects the target's default sweep
  double gamma = 0.5;
  // Non-swept parameters; unset ones follow the target's regime ties.
  std::optional<double> eps;
  std::optional<double> mu;
  std::optional<double> delta;
  // B/FD and B/B generators; ILW α.
  double alpha1 = 0.3;
  double alpha2 = 0.5;
  double beta = 0.2;
  double alpha = 1.0;
  bool bb_gamma_factor = false;
  double sobolev_index = 0.0;
  Corpus corpus;
};

struct StudySample {
  double x = 0.0;
  RegimeParams params{0.5, 1.0, 0.1, 1.0};
  double error = 0.0;
  double error_zeta = 0.0;  // thm targets only
  double error_v = 0.0;
  double reference_norm = 0.0;
  int oracle_iterations = 0;
  double oracle_residual = 0.0;
};

struct OrderFit {
  double order = 0.0;
  double intercept = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;  // 95% band
  double ci_high = 0.0;
};

// Least-squares slope of log(y) against log(x). Needs at least 3 points with
// positive values.
OrderFit fit_order(const std::vector<double>& x, const std::vector<double>& y);

struct RunRecord {
  Target target = Target::PROP2;
  std::string label;  // file stem and report name
  TargetInfo info;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<StudySample> samples;
  OrderFit fit;
  bool pass = false;
  std::string model;
  std::string summary() const;
};

// Parameters of each sample. Throws iwave::Error naming the broken tie when
// the sweep leaves the target's regime.
std::vector<RegimeParams> sweep_params(const SweepSpec& spec);

// Runs the sweep (samples in parallel) and fits the order. Needs at least 4
// points.
RunRecord convergence_study(const SweepSpec& spec);

// Consistency residual of an arbitrary model along a user-supplied sweep; no
// regime ties are enforced. Without an expected order every fit passes.
RunRecord consistency_study(const ModelId& model, const std::vector<RegimeParams>& params,
                            const std::vector<double>& x, const std::string& variable, const Corpus& corpus,
                            double sobolev_index = 0.0, std::optional<double> expected_order = std::nullopt);

// Writes <dir>/<label>.csv and <dir>/<label>.meta.txt.
void write_run_record(const std::string& dir, const RunRecord& rec);

// ---------------------------------------------------------------- parallelism

// Worker count: IWAVE_THREADS when set to a positive integer, otherwise the
// hardware concurrency.
int worker_count();

// Runs fn(0..n-1) on worker_count() threads; the first exception is rethrown
// after all workers finish.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace iwave
