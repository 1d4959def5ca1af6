#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "iwave/error.hpp"
#include "iwave/operators/operators.hpp"
#include "iwave/operators/symbols.hpp"
#include "support.hpp"

using namespace iwave;
using iwave::testing::max_diff;
using iwave::testing::ModeSeries;
using iwave::testing::random_field;
using Cplx = std::complex<double>;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

ScalarField wave(const SpectralGrid& g, double kx, double ky, bool sine = false) {
  return ScalarField::from_function(g, [=](double x, double y) {
    return sine ? std::sin(kx * x + ky * y) : std::cos(kx * x + ky * y);
  });
}

double knorm(double kx, double ky) { return std::hypot(kx, ky); }
}  // namespace

TEST_CASE("scalar multipliers on single modes") {
  const auto g = make_grid(1, {kTwoPi}, {32});
  const auto c = wave(g, 1, 0);
  CHECK(max_diff(t_mu(1.0, c), std::tanh(1.0) * c) < 1e-14);
  CHECK(t_mu(1.0, ScalarField::constant(g, 3.0)).max_abs() < 1e-14);
  CHECK(max_diff(lambda_coth(1.0, c), (1.0 / std::tanh(1.0)) * c) < 1e-13);
  CHECK(max_diff(lambda_coth(4.0, ScalarField::constant(g, 3.0)), ScalarField::constant(g, 1.5)) < 1e-14);
  CHECK(max_diff(t0_mu(0.25, ScalarField::constant(g, 2.0)), ScalarField::constant(g, 1.0)) < 1e-14);

  SUBCASE("lambda_coth approaches |D| for deep layers") {
    const auto f = random_field(g, 5, 1.0, 3);
    const auto absd = apply_real_symbol(f, [](const Wavevector& k) { return k.norm(); });
    const double mu2 = 400.0;
    CHECK(max_diff(lambda_coth(mu2, f), absd) <= 10.0 * std::exp(-2.0 * std::sqrt(mu2)) * f.max_abs() + 1e-13);
  }
  SUBCASE("T_mu approaches sqrt(mu)|D| at third order") {
    const auto f = random_field(g, 3, 1.0, 4);
    std::vector<double> errs;
    for (double mu : {1e-2, 5e-3, 2.5e-3}) {
      const auto lin = apply_real_symbol(f, [mu](const Wavevector& k) { return std::sqrt(mu) * k.norm(); });
      errs.push_back(l2_norm(t_mu(mu, f) - lin));
    }
    CHECK(std::log(errs[0] / errs[2]) / std::log(4.0) == doctest::Approx(1.5).epsilon(0.02));
  }
}

TEST_CASE("t0_mu reproduces the flat Dirichlet-Neumann symbol") {
  const auto g = make_grid(2, {kTwoPi, kTwoPi}, {32, 32});
  const auto psi = random_field(g, 5, 1.0, 8);
  const double mu = 0.7;
  const double smu = std::sqrt(mu);
  const auto lhs = smu * div(t0_mu(mu, grad(psi)));
  const auto rhs = apply_real_symbol(psi, [smu](const Wavevector& k) { return -smu * k.norm() * std::tanh(smu * k.norm()); });
  CHECK(max_diff(lhs, rhs) < 1e-12);
  const VectorField e1({wave(g, 1, 0), ScalarField(g)});
  CHECK(max_diff(t0_mu(1.0, e1)[0], std::tanh(1.0) * wave(g, 1, 0)) < 1e-14);
}

TEST_CASE("projector_pi") {
  SUBCASE("identity on mean-zero fields in 1d") {
    const auto g = make_grid(1, {kTwoPi}, {64});
    const auto f = random_field(g, 8, 1.0, 1);
    CHECK(max_diff(projector_pi(VectorField({f}))[0], f) < 1e-13);
    CHECK(projector_pi(VectorField({ScalarField::constant(g, 2.0)})).max_abs() < 1e-15);
  }
  const auto g = make_grid(2, {kTwoPi, 3.0}, {32, 16});
  const auto f = random_field(g, 4, 1.0, 2);
  const auto h = random_field(g, 4, 1.0, 5);
  SUBCASE("fixes gradients, removes solenoidal fields") {
    CHECK(max_diff(projector_pi(grad(f)), grad(f)) < 1e-12);
    const VectorField sol({-partial(f, 1), partial(f, 0)});
    CHECK(projector_pi(sol).max_abs() < 1e-12);
  }
  SUBCASE("idempotent and divergence preserving") {
    const VectorField v({f, h});
    const auto pv = projector_pi(v);
    CHECK(max_diff(projector_pi(pv), pv) <= 1e-12 * v.max_abs());
    CHECK(max_diff(div(pv), div(v)) < 1e-12);
  }
  SUBCASE("commutes with multipliers and differentials") {
    const VectorField v({f, h});
    CHECK(max_diff(projector_pi(t0_mu(0.3, v)), t0_mu(0.3, projector_pi(v))) < 1e-12);
    CHECK(max_diff(projector_pi(laplacian(v)), laplacian(projector_pi(v))) < 1e-11);
    CHECK(max_diff(lambda_coth(2.0, t_mu(0.5, f)), t_mu(0.5, lambda_coth(2.0, f))) < 1e-12);
  }
}

TEST_CASE("t1_mu against brute-force convolution") {
  const double mu = 0.6;
  auto t0s = [mu](double kx, double ky) { return Cplx(symbols::t0(mu, knorm(kx, ky))); };
  SUBCASE("1d, zeta = cos x, W = grad cos 2x") {
    const double L = kTwoPi;
    const auto g = make_grid(1, {L}, {32});
    ModeSeries z(L), p(L);
    z.add_real(1, 0, 1.0, 0.0);
    p.add_real(2, 0, 1.0, 0.0);
    const ModeSeries w = p.dx();
    const ModeSeries expect = (z * w.dx().apply(t0s)).apply(t0s).dx().scaled(-1.0);
    const auto got = t1_mu(mu, z.eval(g), VectorField({w.eval(g)}));
    CHECK(max_diff(got[0], expect.eval(g)) < 1e-13);
  }
  SUBCASE("2d, several modes") {
    const double L = 10.0;
    const auto g = make_grid(2, {L, L}, {32, 32});
    ModeSeries z(L, L), wx(L, L), wy(L, L);
    z.add_real(1, 0, 0.7, -0.2).add_real(1, 2, 0.3, 0.4).add_real(0, 1, -0.5, 0.1);
    wx.add_real(2, 1, 0.4, 0.9).add_real(1, -1, 0.2, 0.0);
    wy.add_real(0, 3, 1.0, -0.3).add_real(2, 1, -0.6, 0.5);
    const ModeSeries d = (wx.dx() + wy.dy()).apply(t0s);
    const ModeSeries inner = (z * d).apply(t0s);
    const auto got = t1_mu(mu, z.eval(g), VectorField({wx.eval(g), wy.eval(g)}));
    CHECK(max_diff(got[0], inner.dx().scaled(-1.0).eval(g)) < 1e-12);
    CHECK(max_diff(got[1], inner.dy().scaled(-1.0).eval(g)) < 1e-12);
  }
  SUBCASE("vanishes on zero zeta and solenoidal W") {
    const auto g = make_grid(2, {kTwoPi, kTwoPi}, {16, 16});
    const auto f = random_field(g, 3, 1.0, 9);
    const VectorField sol({-partial(f, 1), partial(f, 0)});
    CHECK(t1_mu(mu, ScalarField(g), grad(f)).max_abs() == 0.0);
    CHECK(t1_mu(mu, f, sol).max_abs() < 1e-12);
  }
}

TEST_CASE("bilinear_b against brute-force mode arithmetic") {
  const RegimeParams p(0.5, 0.8, 0.1, 1.0);
  const double mu = p.mu(), mu2 = p.mu2();
  auto ratio = [=](double kx, double ky) { return Cplx(1.0 + symbols::tanh_ratio(mu, mu2, knorm(kx, ky))); };
  auto kcoth = [=](double kx, double ky) { return Cplx(symbols::kcoth(mu2, knorm(kx, ky))); };
  auto t0s = [=](double kx, double ky) { return Cplx(symbols::t0(mu, knorm(kx, ky))); };

  SUBCASE("1d, zeta = cos x, psi = sin x") {
    const double L = kTwoPi;
    const auto g = make_grid(1, {L}, {32});
    const RegimeParams q(0.5, 1.0, 0.1, 1.0);
    ModeSeries z(L), psi(L);
    z.add_real(1, 0, 1.0, 0.0);
    psi.add_real(1, 0, 0.0, 1.0);
    auto r1 = [](double kx, double) { return Cplx(1.0 + symbols::tanh_ratio(1.0, 1.0, std::abs(kx))); };
    auto kc1 = [](double kx, double) { return Cplx(symbols::kcoth(1.0, std::abs(kx))); };
    auto t01 = [](double kx, double) { return Cplx(symbols::t0(1.0, std::abs(kx))); };
    auto no_mean = [](double kx, double) { return Cplx(kx == 0.0 ? 0.0 : 1.0); };
    const ModeSeries gx = psi.dx();
    const ModeSeries first = (z * gx.apply(r1)).apply(no_mean).apply(kc1);
    const ModeSeries second = (z * gx.dx().apply(t01)).apply(r1).dx();
    const auto got = bilinear_b(q, z.eval(g), grad(psi.eval(g)));
    CHECK(max_diff(got[0], (first + second).eval(g)) < 1e-13);
  }
  SUBCASE("2d") {
    const double L = 9.0;
    const auto g = make_grid(2, {L, L}, {32, 32});
    ModeSeries z(L, L), psi(L, L);
    z.add_real(1, 1, 0.5, 0.2).add_real(0, 2, -0.3, 0.0);
    psi.add_real(2, 0, 0.1, 0.8).add_real(1, -1, 0.6, -0.4);
    const ModeSeries gx = psi.dx(), gy = psi.dy();
    // Π(ζ(1+R)∇ψ) then |D|coth; Π built from k kᵀ/|k|² with 0 at k = 0.
    const ModeSeries ux = z * gx.apply(ratio), uy = z * gy.apply(ratio);
    auto pi_div = [](double kx, double ky) {
      const double k2 = kx * kx + ky * ky;
      return k2 == 0.0 ? Cplx(0.0) : Cplx(-1.0 / k2);
    };
    // Πu = ∇φ with φ = -|D|⁻²∇·u.
    const ModeSeries phi = (ux.dx() + uy.dy()).apply(pi_div);
    const ModeSeries firstx = phi.dx().apply(kcoth), firsty = phi.dy().apply(kcoth);
    const ModeSeries inner = (z * (gx.dx() + gy.dy()).apply(t0s)).apply(ratio);
    const double s = std::sqrt(mu2);
    const auto got = bilinear_b(p, z.eval(g), grad(psi.eval(g)));
    CHECK(max_diff(got[0], (firstx + inner.dx()).scaled(s).eval(g)) < 1e-12);
    CHECK(max_diff(got[1], (firsty + inner.dy()).scaled(s).eval(g)) < 1e-12);
  }
  SUBCASE("bilinear zeros") {
    const auto g = make_grid(1, {kTwoPi}, {32});
    const auto f = random_field(g, 4, 1.0, 3);
    CHECK(bilinear_b(p, ScalarField(g), grad(f)).max_abs() == 0.0);
    CHECK(bilinear_b(p, f, VectorField(g)).max_abs() == 0.0);
  }
}

TEST_CASE("q_frak") {
  SUBCASE("zero amplitude collapses to the projection") {
    const auto g = make_grid(2, {kTwoPi, kTwoPi}, {16, 16});
    const VectorField w({random_field(g, 3, 1.0, 1), random_field(g, 3, 1.0, 2)});
    const auto r = q_frak(ScalarField(g), w);
    CHECK(r.terms <= 2);
    CHECK(max_diff(r.value, projector_pi(w)) == 0.0);
  }
  SUBCASE("1d closed form equals the series") {
    // The pointwise quotient is not band-limited; the grid must resolve it
    // down to the Nyquist mode, which the series never populates.
    const auto g = make_grid(1, {16.0}, {256});
    const auto a = random_field(g, 5, 0.5, 3);
    const VectorField w({random_field(g, 5, 1.0, 4)});
    const auto series = q_frak(a, w);
    CHECK(max_diff(series.value, q_frak_closed_1d(a, w)) <= 1e-10);
    // V = W/(1+a) up to the constant fixed by mean(V) = 0.
    const auto v = q_frak_closed_1d(a, w);
    CHECK(std::abs(v[0].mean()) < 1e-14);
  }
  SUBCASE("defining identity and Pi-fixedness") {
    for (int dim : {1, 2}) {
      const auto g = dim == 1 ? make_grid(1, {16.0}, {64}) : make_grid(2, {16.0, 16.0}, {32, 32});
      const auto a = random_field(g, 4, 0.5, 7);
      const VectorField w = dim == 1 ? VectorField({random_field(g, 4, 1.0, 8)})
                                     : VectorField({random_field(g, 4, 1.0, 8), random_field(g, 4, 1.0, 9)});
      QFrakOptions opt;
      const auto r = q_frak(a, w, opt);
      const ScalarField h = 1.0 + a;
      const double resid = l2_norm(div(product(h, r.value) - w));
      CHECK(resid <= 10.0 * opt.tol * std::max(1.0, l2_norm(projector_pi(w))));
      CHECK(max_diff(projector_pi(r.value), r.value) <= 1e-12 * w.max_abs());
    }
  }
  SUBCASE("contraction guard") {
    const auto g = make_grid(1, {kTwoPi}, {32});
    const VectorField w({wave(g, 1, 0)});
    CHECK_THROWS_AS(q_frak(0.95 * wave(g, 2, 0), w), ContractionFailure);
    QFrakOptions tight;
    tight.max_terms = 3;
    CHECK_THROWS_AS(q_frak(0.8 * wave(g, 2, 0), w, tight), ContractionFailure);
  }
}

TEST_CASE("velocity expansions") {
  const auto g = make_grid(1, {kTwoPi}, {64});
  const auto z = random_field(g, 4, 1.0, 1);
  const auto psi = random_field(g, 4, 1.0, 2);
  const RegimeParams p(0.5, 1.0, 0.2, 0.3);
  CHECK(max_diff(expand_v_small_amplitude(p, ScalarField(g), psi), t0_mu(p.mu(), grad(psi))) < 1e-14);
  const RegimeParams p0 = p.with_eps(0.0);
  CHECK(max_diff(expand_v_small_amplitude(p0, z, psi), expand_v_small_amplitude(p0, 2.0 * z, psi)) == 0.0);
  CHECK(max_diff(expand_v_shallow(p, ScalarField(g), psi, 1), p.mu() * grad(psi)) < 1e-14);
  const auto diff = expand_v_shallow(p, z, psi, 2) - expand_v_shallow(p, z, psi, 1);
  CHECK(max_diff(diff, (p.mu() * p.mu() / 3.0) * laplacian(grad(psi))) < 1e-13);
  CHECK_THROWS_AS(expand_v_shallow(p, z, psi, 3), Error);
}

TEST_CASE("expand_h flat-interface forms") {
  const auto g = make_grid(2, {kTwoPi, kTwoPi}, {16, 16});
  const auto psi = random_field(g, 3, 1.0, 4);
  const ScalarField zero(g);
  const RegimeParams p(0.4, 0.7, 0.1, 0.5);
  const double mu = p.mu(), mu2 = p.mu2();
  SUBCASE("FDFD equals the tanh ratio") {
    const auto expect = -apply_real_symbol(grad(psi), [=](const Wavevector& k) {
      return k.norm() == 0.0 ? 0.0 : std::tanh(std::sqrt(mu) * k.norm()) / std::tanh(std::sqrt(mu2) * k.norm());
    });
    CHECK(max_diff(expand_h(p, zero, psi, HRegime::FDFD), expect) < 1e-13);
  }
  SUBCASE("SWSW equals -delta grad psi") {
    CHECK(max_diff(expand_h(p, zero, psi, HRegime::SWSW), -p.delta() * grad(psi)) < 1e-13);
  }
  SUBCASE("BB reduces to its linear part") {
    const double d = p.delta();
    VectorField expect = -d * grad(psi);
    expect.add_scaled(-(d * mu / 3.0) * (1.0 - 1.0 / (d * d)), laplacian(grad(psi)));
    CHECK(max_diff(expand_h(p, zero, psi, HRegime::BB), expect) < 1e-12);
  }
  SUBCASE("ILW tends to BO for a deep lower layer") {
    const RegimeParams deep(0.4, std::sqrt(mu / 400.0), 0.1, mu);
    const auto ilw = expand_h(deep, zero, psi, HRegime::ILW);
    const auto bo = expand_h(deep, zero, psi, HRegime::BO);
    CHECK(max_diff(ilw, bo) < 1e-12 * (1.0 + bo.max_abs()));
  }
}
