#include <doctest.h>

#include <cmath>
#include <numbers>

#include <spinor_hardy/quadrature.hpp>

using namespace spinh;
using std::numbers::pi;

TEST_CASE("gauss_legendre: symmetry, weight sum, degree 2n-1 exactness") {
  const QuadratureRule1D q = gauss_legendre(5);
  REQUIRE(q.nodes.size() == 5);
  double wsum = 0.0;
  for (double w : q.weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-15));
  for (std::size_t i = 0; i < q.nodes.size(); ++i)
    CHECK(q.nodes[i] == doctest::Approx(-q.nodes[q.nodes.size() - 1 - i]).epsilon(1e-14));

  // int_{-1}^{1} x^k = 0 (odd) or 2/(k+1) (even), exact through k = 9.
  for (int k = 0; k <= 9; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::pow(q.nodes[i], k);
    const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    CHECK(std::abs(s - exact) < 1e-14);
  }
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("radial grid, linear map: int_1^2 r^3 dr = 15/4") {
  const RadialGrid g = RadialGrid::make(8, 1.0, 2.0, RadialMap::linear);
  double s = 0.0;
  for (int i = 0; i < g.size(); ++i) s += g.w[i] * g.r[i] * g.r[i] * g.r[i];
  CHECK(std::abs(s - 15.0 / 4.0) < 1e-13);
}

TEST_CASE("radial grid, log map: Gaussian and fractional-power integrands") {
  const RadialGrid g = RadialGrid::make(96, 1e-6, 12.0, RadialMap::log);
  double gauss = 0.0, frac = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    gauss += g.w[i] * g.r[i] * std::exp(-g.r[i] * g.r[i]);
    frac += g.w[i] * std::pow(g.r[i], -0.5);  // int r^{-1/2} = 2 sqrt(r)
  }
  CHECK(std::abs(gauss - 0.5) < 1e-12);
  CHECK(std::abs(frac - 2.0 * (std::sqrt(12.0) - 1e-3)) < 1e-9);
  CHECK_THROWS_AS(RadialGrid::make(8, -1.0, 2.0, RadialMap::log), std::invalid_argument);
  CHECK_THROWS_AS(RadialGrid::make(1, 1.0, 2.0, RadialMap::log), std::invalid_argument);
}

TEST_CASE("composite_log: panel rule matches adaptive on a kinked profile") {
  const auto f = [](double r) { return r < 1.0 ? r : 1.0 / (r * r); };
  const RadialGrid g = RadialGrid::composite_log({0.01, 1.0, 8.0}, 24);
  double s = 0.0;
  for (int i = 0; i < g.size(); ++i) s += g.w[i] * f(g.r[i]);
  const double exact = 0.5 * (1.0 - 1e-4) + (1.0 - 1.0 / 8.0);
  CHECK(std::abs(s - exact) < 1e-12);
  CHECK_THROWS_AS(RadialGrid::composite_log({1.0}, 8), std::invalid_argument);
  CHECK_THROWS_AS(RadialGrid::composite_log({2.0, 1.0}, 8), std::invalid_argument);
}

TEST_CASE("sphere rule: reference integrals and exactness metadata") {
  const SphereGrid sg = SphereGrid::make(16, 32);
  CHECK(sg.exactness == 31);  // min(2*16-1, 32-1)
  double one = 0.0, z2 = 0.0, x2y2 = 0.0;
  for (const auto& n : sg.nodes) {
    one += n.w;
    z2 += n.w * n.omega.z * n.omega.z;
    x2y2 += n.w * n.omega.x * n.omega.x * n.omega.y * n.omega.y;
  }
  CHECK(std::abs(one - 4.0 * pi) < 1e-12);
  CHECK(std::abs(z2 - 4.0 * pi / 3.0) < 1e-13);
  CHECK(std::abs(x2y2 - 4.0 * pi / 15.0) < 1e-13);
  CHECK_THROWS_AS(SphereGrid::make(1, 8), std::invalid_argument);

  const double via_fn = integrate_sphere(sg, [](const Vec3& w) { return w.z * w.z; });
  CHECK(std::abs(via_fn - 4.0 * pi / 3.0) < 1e-13);
}

TEST_CASE("volume integrals over the shell") {
  const Grid3D grid = Grid3D::make(96, 8, 16, 1e-6, 12.0, RadialMap::log);
  // int e^{-2 r^2} d^3x = (pi/2)^{3/2}
  const double plain = grid.integrate([](const Vec3& x) { return std::exp(-2.0 * dot(x, x)); });
  CHECK(std::abs(plain - std::pow(pi / 2.0, 1.5)) < 1e-12);

  // weighted variants of the same envelope
  const auto env = [](const Vec3& x) { return std::exp(-2.0 * dot(x, x)); };
  CHECK(std::abs(integrate_weighted(grid, env, RadialWeight::inv_r) - pi) < 1e-10);
  CHECK(std::abs(integrate_weighted(grid, env, RadialWeight::r) - pi / 2.0) < 1e-11);
  CHECK(std::abs(integrate_weighted(grid, env, RadialWeight::one) - std::pow(pi / 2.0, 1.5)) <
        1e-12);

  try {
    integrate_weighted(
        grid, [](const Vec3& x) { return x.z > 0.9 ? std::nan("") : 1.0; }, RadialWeight::one);
    FAIL("expected a non-finite integrand error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("non-finite integrand at node") != std::string::npos);
  }
}

TEST_CASE("volume integration is deterministic run to run") {
  const Grid3D grid = Grid3D::make(48, 8, 16, 1e-4, 10.0, RadialMap::log);
  const auto f = [](const Vec3& x) { return std::exp(-dot(x, x)) * (1.0 + x.x * x.y); };
  const double a = grid.integrate(f);
  const double b = grid.integrate(f);
  CHECK(a == b);  // bitwise: pairwise reduction over a materialised buffer
}

TEST_CASE("integrate_adaptive: smooth references and failure modes") {
  // int_0^1 r e^{-r} dr = 1 - 2/e
  const double v = integrate_adaptive([](double r) { return r * std::exp(-r); }, 0.0, 1.0);
  CHECK(std::abs(v - (1.0 - 2.0 / std::numbers::e)) < 1e-14);
  // int_0^1 r^2 e^{-r} dr = 2 - 5/e  (primitive of the expression catalog case)
  const double w = integrate_adaptive([](double r) { return r * r * std::exp(-r); }, 0.0, 1.0);
  CHECK(std::abs(w - (2.0 - 5.0 / std::numbers::e)) < 1e-14);
  // steep but regular: int_{0.01}^1 r^{-1/2} = 2 (1 - 0.1)
  const double s = integrate_adaptive([](double r) { return 1.0 / std::sqrt(r); }, 0.01, 1.0);
  CHECK(std::abs(s - 1.8) < 1e-12);

  CHECK_THROWS_AS(integrate_adaptive([](double) { return std::nan(""); }, 0.0, 1.0),
                  std::runtime_error);
  CHECK_THROWS_AS(integrate_adaptive([](double) { return 1.0; }, 1.0, 0.0),
                  std::invalid_argument);
}
