#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "doctest.h"
#include "iwave/error.hpp"
#include "iwave/spectral/grid.hpp"
#include "iwave/spectral/io.hpp"
#include "iwave/spectral/ops.hpp"
#include "support.hpp"

using namespace iwave;
using iwave::testing::max_diff;
using iwave::testing::random_field;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

ScalarField cosine(const SpectralGrid& g, double k) {
  return ScalarField::from_function(g, [k](double x, double) { return std::cos(k * x); });
}
}  // namespace

TEST_CASE("make_grid") {
  SUBCASE("1d wavenumbers") {
    const auto g = make_grid(1, {kTwoPi}, {64});
    const auto k = g.wavenumbers(0);
    REQUIRE(k.size() == 64);
    CHECK(k.front() == doctest::Approx(-32.0));
    CHECK(k.back() == doctest::Approx(31.0));
    CHECK(g.spectral_size() == 33);
    CHECK(g.modes().back().nyquist);
  }
  SUBCASE("2d tensor grid") {
    const auto g = make_grid(2, {kTwoPi, kTwoPi}, {32, 32});
    CHECK(g.size() == 1024);
    CHECK(g.spectral_size() == 32 * 17);
  }
  SUBCASE("spacing follows the period") {
    const auto g = make_grid(1, {2 * kTwoPi}, {64});
    const auto k = g.wavenumbers(0);
    CHECK(k[1] - k[0] == doctest::Approx(0.5));
  }
  SUBCASE("wavenumber set is symmetric apart from the flagged Nyquist") {
    const auto g = make_grid(2, {kTwoPi, 3.0}, {16, 8});
    for (const auto& w : g.modes()) {
      if (w.nyquist) continue;
      CHECK(std::abs(w.mx) < 8);
      CHECK(std::abs(w.my) < 4);
    }
  }
  SUBCASE("rejects bad sizes") {
    CHECK_THROWS_AS(make_grid(1, {kTwoPi}, {63}), Error);
    CHECK_THROWS_AS(make_grid(1, {kTwoPi}, {6}), Error);
    CHECK_THROWS_AS(make_grid(3, {1, 1, 1}, {8, 8, 8}), Error);
  }
}

TEST_CASE("transform round trip and Parseval") {
  for (int dim : {1, 2}) {
    const auto g = dim == 1 ? make_grid(1, {kTwoPi}, {128}) : make_grid(2, {kTwoPi, 4.0}, {32, 16});
    for (unsigned seed = 1; seed <= 5; ++seed) {
      ScalarField f(g);
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      for (auto& v : f.values()) v = u(rng);
      const ScalarField back = inverse(forward(f));
      CHECK(max_diff(back, f) <= 1e-12 * f.max_abs());
      CHECK(sobolev_norm(f, 0.0) == doctest::Approx(quadrature_l2(f)).epsilon(1e-12));
      CHECK(forward(f)[0].real() == doctest::Approx(f.mean()).epsilon(1e-12));
    }
  }
}

TEST_CASE("apply_symbol") {
  const auto g = make_grid(1, {kTwoPi}, {64});
  const auto c = cosine(g, 1.0);
  CHECK(max_diff(apply_symbol(c, [](const Wavevector&) { return std::complex<double>(1.0); }), c) <
        1e-14);
  CHECK(max_diff(apply_real_symbol(c, [](const Wavevector& k) { return k.norm(); }), c) < 1e-13);
  const auto d = apply_symbol(c, [](const Wavevector& k) {
    return std::complex<double>(0.0, k.nyquist ? 0.0 : k.kx);
  });
  const auto ms = ScalarField::from_function(g, [](double x, double) { return -std::sin(x); });
  CHECK(max_diff(d, ms) < 1e-13);
  CHECK_THROWS_AS(apply_real_symbol(c, [](const Wavevector& k) { return 1.0 / k.norm(); }), Error);

  SUBCASE("linearity") {
    const auto g2 = make_grid(2, {kTwoPi, kTwoPi}, {32, 32});
    const auto f = random_field(g2, 6, 1.0, 3);
    const auto h = random_field(g2, 6, 1.0, 4);
    auto sym = [](const Wavevector& k) { return std::tanh(k.norm()) + 0.5; };
    const auto lhs = apply_real_symbol(2.5 * f - 0.75 * h, sym);
    const auto rhs = 2.5 * apply_real_symbol(f, sym) - 0.75 * apply_real_symbol(h, sym);
    CHECK(max_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("differential operators") {
  const auto g = make_grid(1, {kTwoPi}, {64});
  const auto gr = grad(ScalarField::constant(g, 3.0));
  CHECK(gr.max_abs() < 1e-14);
  const auto lap = laplacian(cosine(g, 2.0));
  CHECK(max_diff(lap, -4.0 * cosine(g, 2.0)) < 1e-12);

  for (int dim : {1, 2}) {
    const auto gg = dim == 1 ? make_grid(1, {kTwoPi}, {64}) : make_grid(2, {kTwoPi, kTwoPi}, {32, 32});
    ScalarField f(gg);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : f.values()) v = u(rng);
    const auto a = forward(div(grad(f)));
    const auto b = forward(laplacian(f));
    double err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
    CHECK(err < 1e-12);
    CHECK(std::abs(div(grad(f)).mean()) < 1e-13);
    CHECK(std::abs(partial(f, 0).mean()) < 1e-13);
  }

  SUBCASE("rank-checked entry point") {
    const AnyField s = cosine(g, 1.0);
    CHECK(std::holds_alternative<VectorField>(differential(s, DiffKind::grad)));
    CHECK_THROWS_AS(differential(s, DiffKind::div), Error);
    const AnyField v = grad(cosine(g, 1.0));
    CHECK_THROWS_AS(differential(v, DiffKind::grad), Error);
  }
}

TEST_CASE("product_dealiased") {
  const auto g = make_grid(1, {kTwoPi}, {64});
  const auto c = cosine(g, 1.0);
  const auto expected = ScalarField::from_function(g, [](double x, double) { return 0.5 + 0.5 * std::cos(2 * x); });
  CHECK(max_diff(product_dealiased(c, c), expected) < 1e-14);

  const auto f = random_field(g, 31, 1.0, 1);
  CHECK(max_diff(product_dealiased(ScalarField::constant(g, 1.0), f), truncate_two_thirds(f)) < 1e-14);

  ScalarField a(g), b(g);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& v : a.values()) v = u(rng);
  for (auto& v : b.values()) v = u(rng);
  const auto s = forward(product_dealiased(a, b));
  const auto& mask = g.dealias_mask();
  double high = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!mask[i]) high = std::max(high, std::abs(s[i]));
  }
  CHECK(high < 1e-15);

  const auto g2 = make_grid(2, {kTwoPi, kTwoPi}, {16, 32});
  CHECK_THROWS_AS(product_dealiased(c, ScalarField(g2)), Error);
}

TEST_CASE("sobolev_norm") {
  const auto g = make_grid(1, {kTwoPi}, {64});
  CHECK(sobolev_norm(ScalarField(g), 1.0) == 0.0);
  CHECK(sobolev_norm(ScalarField::constant(g, -2.0), 0.0) ==
        doctest::Approx(2.0 * std::sqrt(kTwoPi)).epsilon(1e-14));
  const auto c = cosine(g, 1.0);
  CHECK(sobolev_norm(c, 1.0) / sobolev_norm(c, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  const auto g2 = make_grid(2, {kTwoPi, kTwoPi}, {16, 16});
  CHECK(sobolev_norm(ScalarField::constant(g2, 1.5), 0.0) == doctest::Approx(1.5 * kTwoPi).epsilon(1e-14));
}

TEST_CASE("serialization round trip") {
  const auto g = make_grid(2, {kTwoPi, 3.0}, {8, 16});
  const auto f = random_field(g, 3, 1.0, 42);
  const auto h = random_field(g, 3, 2.0, 43);
  const auto dir = std::filesystem::temp_directory_path() / "iwave_io_test";
  std::filesystem::create_directories(dir);
  const auto bin = (dir / "f.bin").string();
  write_binary(bin, {f, h});
  const auto back = read_binary(bin);
  REQUIRE(back.size() == 2);
  CHECK(back[0].grid() == g);
  CHECK(max_diff(back[0], f) == 0.0);
  CHECK(max_diff(back[1], h) == 0.0);
  const auto csv = (dir / "f.csv").string();
  write_csv(csv, f);
  CHECK(std::filesystem::file_size(csv) > 0);
  std::filesystem::remove_all(dir);
}
