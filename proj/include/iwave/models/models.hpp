#pragma once

#include <optional>
#include <string>

#include "iwave/operators/operators.hpp"
#include "iwave/operators/params.hpp"
#include "iwave/spectral/field.hpp"

namespace iwave {

struct BoussinesqCoeffs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta = 0.0;
};

// Boussinesq/full-dispersion family. Throws iwave::Error unless α₁ >= 0,
// β >= 0, α₂ <= 1.
BoussinesqCoeffs coeffs_bfd(double alpha1, double alpha2, double beta);
// Boussinesq/Boussinesq family; additionally requires δ > 0.
BoussinesqCoeffs coeffs_bb(double gamma, double delta, double alpha1, double alpha2, double beta);

enum class ModelKind { FDFD, BFD, BB, SWSW, SWFD, ILW, BOSYS, RBO };

const char* model_name(ModelKind k);
// Case-insensitive; throws iwave::Error for unknown names.
ModelKind parse_model(const std::string& name);

struct ModelId {
  ModelKind kind = ModelKind::FDFD;
  // ILW, BOSYS and RBO.
  double alpha = 0.0;
  // BFD and BB.
  BoussinesqCoeffs coeffs;
  // BB only: carry (1-γ) on the μcΔ∇ζ term, as in the B/FD family.
  bool bb_gamma_factor = false;

  static ModelId make(ModelKind kind, double alpha = 0.0, const BoussinesqCoeffs& c = {}) {
    ModelId m;
    m.kind = kind;
    m.alpha = alpha;
    m.coeffs = c;
    return m;
  }
  static ModelId fdfd() { return make(ModelKind::FDFD); }
  static ModelId bfd(const BoussinesqCoeffs& c) { return make(ModelKind::BFD, 0.0, c); }
  static ModelId bb(const BoussinesqCoeffs& c) { return make(ModelKind::BB, 0.0, c); }
  static ModelId swsw() { return make(ModelKind::SWSW); }
  static ModelId swfd() { return make(ModelKind::SWFD); }
  static ModelId ilw(double alpha) { return make(ModelKind::ILW, alpha); }
  static ModelId bosys(double alpha) { return make(ModelKind::BOSYS, alpha); }
  static ModelId rbo(double alpha) { return make(ModelKind::RBO, alpha); }

  bool has_velocity() const { return kind != ModelKind::RBO; }
  // BFD and BB evolve v_β = (1 - μβΔ)^{-1} v.
  bool uses_v_beta() const { return kind == ModelKind::BFD || kind == ModelKind::BB; }
  std::string describe() const;
};

// (ζ, v) or (ζ, v_β); v is empty for the scalar RBO equation.
struct ModelState {
  ScalarField zeta;
  std::optional<VectorField> v;

  ModelState& operator+=(const ModelState& o);
  ModelState& add_scaled(double alpha, const ModelState& o);
  ModelState& operator*=(double s);
  double max_abs() const;
  bool finite() const;
};

ModelState zero_state(const ModelId& model, const SpectralGrid& grid);

// v_β = (1 - μβΔ)^{-1} v and back.
VectorField to_v_beta(double mu, double beta, const VectorField& v);
VectorField from_v_beta(double mu, double beta, const VectorField& v_beta);

// Right-hand sides: each returns ∂_t of the stored state.
ModelState rhs_fdfd(const RegimeParams& p, const ModelState& s);
ModelState rhs_bfd(const RegimeParams& p, const BoussinesqCoeffs& c, const ModelState& s);
// gamma_factor selects μc(1-γ)Δ∇ζ in the velocity equation instead of μcΔ∇ζ;
// only the former is second-order consistent when c ≠ 0 and γ ≠ 0.
ModelState rhs_bb(const RegimeParams& p, const BoussinesqCoeffs& c, const ModelState& s,
                  bool gamma_factor = false);
ModelState rhs_swsw(const RegimeParams& p, const ModelState& s, const QFrakOptions& qopt = {});
// Same system with the Neumann series forced in every dimension.
ModelState rhs_swsw_series(const RegimeParams& p, const ModelState& s, const QFrakOptions& qopt = {});
ModelState rhs_swfd(const RegimeParams& p, const ModelState& s);
ModelState rhs_ilw_bo(const RegimeParams& p, double alpha, const ModelState& s, bool infinite_depth);
ScalarField rhs_rbo(const RegimeParams& p, double alpha, const ScalarField& zeta);

ModelState rhs(const ModelId& model, const RegimeParams& p, const ModelState& s);

// Multiplies a ∂_t-shaped state by the implicit prefactors of the model
// ((1-μbΔ), (1-μdΔ), or the ILW/BO prefactor on ζ).
ModelState apply_prefactor(const ModelId& model, const RegimeParams& p, const ModelState& s);

// Converts (ζ, v) to the model's stored state.
ModelState to_model_state(const ModelId& model, const RegimeParams& p, const ScalarField& zeta,
                          const std::optional<VectorField>& v);

void validate_model(const ModelId& model, const RegimeParams& p, int dim);

}  // namespace iwave
