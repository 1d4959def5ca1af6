#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "iwave/dispersion/dispersion.hpp"
#include "iwave/error.hpp"

using namespace iwave;

TEST_CASE("full relation") {
  SUBCASE("surface limit") {
    const RegimeParams p(0.0, 1.0, 0.1, 0.7);
    for (double k = 0.05; k < 10.0; k += 0.37) {
      const double surf = k * std::tanh(std::sqrt(p.mu()) * k) / std::sqrt(p.mu());
      CHECK(std::abs(omega2_full(p, k).omega2 - surf) <= 1e-14 * surf);
    }
  }
  SUBCASE("sign follows 1 - gamma") {
    for (double g : {0.3, 0.99, 1.2, 2.0}) {
      const RegimeParams p(g, 0.6, 0.1, 0.4);
      for (double k = 0.1; k < 20.0; k *= 1.5) {
        const auto s = omega2_full(p, k);
        CHECK((s.omega2 > 0.0) == (g < 1.0));
        CHECK(s.wellposed == (g < 1.0));
      }
    }
    CHECK(omega2_full(RegimeParams(0.5, 1.0, 0.1, 0.4), 0.0).omega2 == 0.0);
  }
  SUBCASE("long-wave limit") {
    const RegimeParams p(0.4, 0.7, 0.1, 0.5);
    const double k = 1e-4;
    CHECK(omega2_full(p, k).omega2 / (k * k) == doctest::Approx(0.6 / 1.1).epsilon(1e-7));
    const auto bb = coeffs_bb(0.4, 0.7, 0.3, 0.5, 0.2);
    CHECK(omega2_bb(p, bb, k).omega2 / (k * k) == doctest::Approx(0.6 / 1.1).epsilon(1e-7));
  }
  CHECK_THROWS_AS(omega2_full(RegimeParams(0.5, 1.0, 0.1, 0.4), -1.0), Error);
}

TEST_CASE("Boussinesq/full-dispersion relation") {
  SUBCASE("zero generators keep the printed relation nonnegative at gamma = 0.9") {
    // With a = 1/3, b = c = d = 0 the bracket is 1 - X + X^2 - mu k^2/3 with X = sqrt(mu) k coth / gamma,
    // which stays positive whenever gamma^2 < 3. The sign of a alone does not make this relation negative.
    const RegimeParams p(0.9, std::sqrt(0.1), 0.1, 0.1);
    const auto c = coeffs_bfd(0, 0, 0);
    double lowest = 1.0;
    for (double k = 0.01; k < 1e4; k *= 1.01) lowest = std::min(lowest, omega2_bfd(p, c, k).omega2 / (k * k));
    CHECK(lowest > 0.0);
  }
  SUBCASE("well-posed when a, c <= 0 and b, d >= 0 with a positive bracket") {
    const RegimeParams p(0.5, 1.0, 0.1, 0.05);
    const auto c = coeffs_bfd(1.0, 0.0, 0.3);
    REQUIRE(c.a <= 0.0);
    for (double k = 0.05; k < 40.0; k += 0.25) {
      const double bracket = 1.0 - (std::sqrt(p.mu()) / p.gamma()) * k / std::tanh(std::sqrt(p.mu2()) * k);
      if (bracket > 0.0) CHECK(omega2_bfd(p, c, k).omega2 >= 0.0);
    }
  }
  CHECK_THROWS_AS(omega2_bfd(RegimeParams(0.0, 1.0, 0.1, 0.1), coeffs_bfd(0, 0, 0), 1.0), Error);
}

TEST_CASE("Boussinesq/Boussinesq relation") {
  const RegimeParams p(0.5, 0.8, 0.1, 0.1);
  SUBCASE("well-posed coefficient signs") {
    const auto c = coeffs_bb(0.5, 0.8, 1.0, 0.0, 0.3);
    REQUIRE(c.a <= 0.0);
    for (double k = 0.05; k < 100.0; k *= 1.3) CHECK(omega2_bb(p, c, k).omega2 >= 0.0);
  }
  SUBCASE("zero generators are ill-posed at high k") {
    const auto c = coeffs_bb(0.5, 0.8, 0, 0, 0);
    CHECK(c.a > 0.0);
    CHECK(omega2_bb(p, c, 30.0).omega2 < 0.0);
  }
  SUBCASE("gamma factor variant") {
    const auto c = coeffs_bb(0.5, 0.8, 0.3, 0.5, 0.2);
    const double k = 1.3;
    CHECK(omega2_bb(p, c, k, true).omega2 != omega2_bb(p, c, k, false).omega2);
    CHECK(omega2_bb(p.with_eps(0.1), coeffs_bb(0.0, 0.8, 0.3, 0.5, 0.0), k, true).omega2 ==
          doctest::Approx(omega2_bb(p, coeffs_bb(0.0, 0.8, 0.3, 0.5, 0.0), k, false).omega2));
  }
}

TEST_CASE("derived relations are even and vanish at zero") {
  const RegimeParams p(0.5, 0.6, 0.1, 0.05);
  for (const ModelId& m : {ModelId::fdfd(), ModelId::swsw(), ModelId::swfd(), ModelId::ilw(1.0), ModelId::bosys(1.0),
                           ModelId::bfd(coeffs_bfd(1.0, 0.0, 0.3)), ModelId::bb(coeffs_bb(0.5, 0.6, 1.0, 0.0, 0.3))}) {
    CAPTURE(m.describe());
    CHECK(omega2_model(m, p, 0.0).omega2 == 0.0);
  }
  CHECK(omega_rbo(p, 1.0, -1.3) == doctest::Approx(-omega_rbo(p, 1.0, 1.3)));
  SUBCASE("alpha >= 1 keeps the ILW system stable") {
    for (double alpha : {1.0, 2.0})
      for (double k = 0.05; k < 200.0; k *= 1.4) CHECK(omega2_ilw(p, alpha, k, false).omega2 >= 0.0);
  }
}

TEST_CASE("dispersion table") {
  const RegimeParams p(1.2, 1.0, 0.1, 0.1);
  const auto rows = dispersion_table(ModelId::fdfd(), p, 0.1, 3.0, 5);
  REQUIRE(rows.size() == 5);
  CHECK(rows.front().k == 0.1);
  CHECK(rows.back().k == 3.0);
  for (const auto& r : rows) CHECK_FALSE(r.wellposed);
  CHECK_THROWS_AS(dispersion_table(ModelId::fdfd(), p, 1.0, 0.5, 3), Error);
}

TEST_CASE("mode tests in one dimension") {
  const RegimeParams p(0.8, 0.9, 0.1, 0.3);
  const double k = 1.0;
  for (const ModelId& m : {ModelId::fdfd(), ModelId::bfd(coeffs_bfd(0.5, -0.5, 0.2)),
                           ModelId::bb(coeffs_bb(0.8, 0.9, 0.5, -0.5, 0.2)), ModelId::swsw(), ModelId::ilw(1.0),
                           ModelId::bosys(1.0)}) {
    CAPTURE(m.describe());
    const double expect = std::sqrt(omega2_model(m, p, k).omega2);
    const MeasuredFrequency f = measured_dispersion(m, p, k);
    CHECK(f.oscillatory);
    CHECK(std::abs(f.omega - expect) <= 1e-3 * expect);
  }
  SUBCASE("regularized Benjamin-Ono") {
    const RegimeParams q(0.4, 1.0, 0.1, 0.3);
    for (double alpha : {0.0, 1.0}) {
      const MeasuredFrequency f = measured_dispersion(ModelId::rbo(alpha), q, k);
      CHECK(std::abs(f.omega - std::abs(omega_rbo(q, alpha, k))) <= 1e-3 * std::abs(omega_rbo(q, alpha, k)));
    }
  }
  SUBCASE("ill-posed generators grow") {
    const RegimeParams q(0.5, 1.0, 0.1, 0.1);
    const ModelId m = ModelId::bb(coeffs_bb(0.5, 1.0, 0, 0, 0));
    const double kk = 30.0;
    const double w2 = omega2_bb(q, m.coeffs, kk).omega2;
    REQUIRE(w2 < 0.0);
    const MeasuredFrequency f = measured_dispersion(m, q, kk);
    CHECK_FALSE(f.oscillatory);
    CHECK(f.growth_rate == doctest::Approx(std::sqrt(-w2)).epsilon(1e-3));
  }
}
