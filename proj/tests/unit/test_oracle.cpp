#include <cmath>
#include <numbers>

#include "doctest.h"
#include "iwave/error.hpp"
#include "iwave/operators/operators.hpp"
#include "iwave/oracle/oracle.hpp"
#include "support.hpp"

using namespace iwave;
using iwave::testing::max_diff;
using iwave::testing::random_field;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

ScalarField cosx(const SpectralGrid& g) {
  return ScalarField::from_function(g, [](double x, double) { return std::cos(x); });
}

double rel(const ScalarField& a, const ScalarField& b) { return l2_norm(a - b) / l2_norm(b); }
double rel(const VectorField& a, const VectorField& b) { return l2_norm(a - b) / l2_norm(b); }
}  // namespace

TEST_CASE("strip grid validation") {
  const auto g = make_grid(1, {kTwoPi}, {16});
  CHECK_THROWS_AS(StripGrid::make(g, 6), Error);
  CHECK(StripGrid::standard(g).nz == 32);
  CHECK(StripGrid::standard(make_grid(2, {kTwoPi, kTwoPi}, {16, 16})).nz == 24);
}

TEST_CASE("flat interface closed forms") {
  const auto g = make_grid(1, {kTwoPi}, {128});
  const auto strip = StripGrid::make(g, 32);
  const ScalarField zero(g);
  const auto psi = cosx(g);
  for (double delta : {1.0, 0.5}) {
    const RegimeParams p(0.5, delta, 0.1, 1.0);
    const double t1 = std::tanh(std::sqrt(p.mu()));
    const double t2 = std::tanh(std::sqrt(p.mu2()));
    const OracleState st = oracle_evaluate(p, zero, psi, strip);
    CHECK(rel(st.g, -std::sqrt(p.mu()) * t1 * psi) <= 1e-8);
    CHECK(rel(st.v, t1 * grad(psi)) <= 1e-8);
    CHECK(rel(st.h, -(t1 / t2) * grad(psi)) <= 1e-8);
    CHECK(rel(v_from_psi(p, psi, st), -(t1 / t2 + p.gamma()) * grad(psi)) <= 1e-8);
    const ScalarField n = nonlinear_n(p, zero, psi, st);
    const ScalarField gm = (1.0 / p.mu()) * st.g;
    CHECK(max_diff(n, (0.5 * p.mu() * (p.gamma() - 1.0)) * product(gm, gm)) < 1e-12);
  }
  SUBCASE("gamma = 1 removes the nonlinear term") {
    const RegimeParams p(1.0, 1.0, 0.1, 1.0);
    CHECK(nonlinear_n(p, zero, psi, strip).max_abs() < 1e-12);
  }
}

TEST_CASE("oracle identities on the test corpus") {
  const auto g = make_grid(1, {16.0 * std::numbers::pi}, {128});
  const auto strip = StripGrid::make(g, 32);
  const auto z = random_field(g, 8, 1.0, 11);
  const auto psi = random_field(g, 8, 1.0, 12);
  for (const RegimeParams& p : {RegimeParams(0.5, 1.0, 0.4, 1.0), RegimeParams(0.3, 0.5, 0.2, 0.1)}) {
    const OracleState st = oracle_evaluate(p, z, psi, strip);
    CAPTURE(p.mu());
    CHECK(l2_norm(st.g - std::sqrt(p.mu()) * div(st.v)) <= 1e-6);
    CHECK(std::abs(st.g.mean()) <= 1e-10 * l2_norm(st.g));
    CHECK(integrate(product(psi, st.g)) <= 0.0);
    const FullRhs f = full_rhs(p, z, psi, st);
    CHECK(std::abs(f.dzeta_dt.mean()) <= 1e-10 * l2_norm(f.dzeta_dt));
  }
}

TEST_CASE("constant potentials") {
  const auto g = make_grid(1, {kTwoPi}, {32});
  const auto strip = StripGrid::make(g, 16);
  const auto z = random_field(g, 3, 0.5, 3);
  const RegimeParams p(0.5, 1.0, 0.5, 0.5);
  const auto c = ScalarField::constant(g, 2.5);
  const OracleState st = oracle_evaluate(p, z, c, strip);
  CHECK(st.g.max_abs() < 1e-11);
  CHECK(st.v.max_abs() < 1e-11);
  CHECK(st.h.max_abs() < 1e-11);
  CHECK(nonlinear_n(p, z, c, st).max_abs() < 1e-11);
  const FullRhs f = full_rhs(p, z, c, st);
  CHECK(f.dzeta_dt.max_abs() < 1e-11);
  CHECK(max_diff(f.dv_dt, -(1.0 - p.gamma()) * grad(z)) < 1e-11);
}

TEST_CASE("spectral convergence in nz") {
  const auto g = make_grid(1, {kTwoPi}, {32});
  const auto z = random_field(g, 3, 0.5, 5);
  const auto psi = random_field(g, 3, 1.0, 6);
  const RegimeParams p(0.5, 1.0, 0.5, 1.0);
  const ScalarField ref = oracle_g(p, z, psi, StripGrid::make(g, 48));
  const double e8 = l2_norm(oracle_g(p, z, psi, StripGrid::make(g, 8)) - ref);
  const double e16 = l2_norm(oracle_g(p, z, psi, StripGrid::make(g, 16)) - ref);
  CHECK(e8 / e16 > 1e2);
}

TEST_CASE("layer thickness is enforced") {
  const auto g = make_grid(1, {kTwoPi}, {32});
  const auto strip = StripGrid::make(g, 16);
  const auto z = 1.5 * cosx(g);
  const RegimeParams p(0.5, 1.0, 0.8, 1.0);
  CHECK_THROWS_AS(oracle_evaluate(p, z, z, strip), DepthViolation);
  CHECK_THROWS_AS(RegimeParams(0.5, 1.0, 1.2, 1.0), Error);
}
