#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include <spinor_hardy/spectral.hpp>
#include <spinor_hardy/trial.hpp>

using namespace spinh;

namespace {

// Independent oracle: sigma.L + 1 restricted to the angular sector l has
// eigenvalues l + 1 (multiplicity 2l + 2, the j = l + 1/2 ladder) and -l
// (multiplicity 2l, the j = l - 1/2 ladder, absent at l = 0).
std::vector<double> free_spectrum_oracle(int l_max) {
  std::vector<double> ev;
  for (int l = 0; l <= l_max; ++l) {
    ev.insert(ev.end(), 2 * l + 2, double(l + 1));
    if (l > 0) ev.insert(ev.end(), 2 * l, double(-l));
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

Vec3 random_dir(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return normalized({n(rng), n(rng), n(rng)});
}

}  // namespace

TEST_CASE("basis layout round-trips") {
  for (int flat = 0; flat < basis_dim(4); ++flat) {
    const BasisIndex b = basis_unflat(flat);
    CHECK(basis_flat(b) == flat);
    CHECK(b.l >= 0);
    CHECK(b.l <= 4);
    CHECK(std::abs(b.m) <= b.l);
    CHECK((b.s == 1 || b.s == 2));
  }
  CHECK(basis_dim(0) == 2);
  CHECK(basis_dim(6) == 98);
}

TEST_CASE("free matrix: Hermitian, block-diagonal in l") {
  const SpinOrbitMatrix m = assemble_free(3);
  CHECK(m.hermiticity_residual < 1e-14);
  for (int a = 0; a < basis_dim(3); ++a)
    for (int b = 0; b < basis_dim(3); ++b)
      if (basis_unflat(a).l != basis_unflat(b).l) CHECK(std::abs(m.mat(a, b)) == 0.0);
  CHECK_THROWS_AS(assemble_free(-1), std::invalid_argument);
}

TEST_CASE("free spectra match the ladder oracle for l_max = 0..4") {
  for (int l_max = 0; l_max <= 4; ++l_max) {
    const SpectrumResult res = eigenvalues(assemble_free(l_max));
    const std::vector<double> expected = free_spectrum_oracle(l_max);
    REQUIRE(res.eigenvalues.size() == expected.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i)
      worst = std::max(worst, std::abs(res.eigenvalues[i] - expected[i]));
    CHECK(worst < 1e-12);
    CHECK(res.mu1 == doctest::Approx(1.0).epsilon(1e-12));
    if (l_max >= 1) CHECK(res.lambda1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.dropped == 0);  // free matrices have no truncation leakage
    CHECK(res.filtered.size() == res.eigenvalues.size());
  }
}

TEST_CASE("A = 0 magnetic assembly reproduces the free matrix") {
  const SphereGrid sg = SphereGrid::make(10, 20);
  const SpinOrbitMatrix free_m = assemble_free(3);
  const SpinOrbitMatrix zero_m = assemble_magnetic(GaugePotential::free_field(), 3, sg);
  CHECK((free_m.mat - zero_m.mat).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("magnetic matrix at l_max = 6: Hermitian, integer spectrum after filtering") {
  // l_max must comfortably exceed the shells we inspect: every eigenvector
  // leaks a little into the truncation edge, and only for l_max >= 6 do the
  // low shells fall below the contamination threshold.
  const GaugePotential gauge = make_gauge(example_field(1.0, 0.0));
  const SphereGrid sg = SphereGrid::make(10, 20);
  const SpinOrbitMatrix m = assemble_magnetic(gauge, 6, sg);
  CHECK_FALSE(m.exactness_warning);
  CHECK(m.hermiticity_residual < 1e-12);
  const SpectrumResult res = eigenvalues(m);
  CHECK(res.hermiticity_residual < 1e-12);
  CHECK(res.dropped > 0);  // truncation edge states must be discarded
  REQUIRE(res.filtered.size() >= 18);  // the complete l <= 2 shells survive
  for (double v : res.filtered) CHECK(std::abs(v - std::round(v)) < 1e-10);
  CHECK(res.mu1 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("an under-resolved sphere rule is flagged, not silently used") {
  const GaugePotential gauge = make_gauge(example_field(1.0, 0.0));
  const SpinOrbitMatrix m = assemble_magnetic(gauge, 3, SphereGrid::make(2, 4));
  CHECK(m.exactness_warning);
}

TEST_CASE("eigenvalues() refuses non-Hermitian input") {
  SpinOrbitMatrix m = assemble_free(1);
  m.mat(0, 1) += Complex(0.5, 0.25);  // break symmetry
  m.hermiticity_residual = 0.5;
  CHECK_THROWS_AS(eigenvalues(m), std::invalid_argument);
}

TEST_CASE("phase intertwining: L_A e^{i eta} = e^{i eta} L pointwise") {
  const GaugePotential gauge = make_gauge(example_field(1.0, 0.0));
  std::mt19937_64 rng(121);
  std::uniform_real_distribution<double> ur(0.4, 2.0);
  for (int trial = 0; trial < 3; ++trial) {
    const SpinorField f = random_gaussian_poly(rng);
    std::vector<Vec3> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(ur(rng) * random_dir(rng));
    CHECK(phase_intertwine_residual(gauge, f, pts) < 1e-10);
  }
}

TEST_CASE("sphere norm bound: |(sigma.L_A + 1) u| >= |u| on degree-0 fields") {
  const GaugePotential gauge = make_gauge(example_field(1.0, 0.0));
  const SphereGrid sg = SphereGrid::make(14, 28);
  std::mt19937_64 rng(122);
  for (int trial = 0; trial < 5; ++trial) {
    const SpinorField f = random_gaussian_poly(rng);
    const auto [op_norm, u_norm] = sphere_norm_bound_check(f, gauge, sg);
    CHECK(u_norm > 0.0);
    CHECK(op_norm >= u_norm * (1.0 - 1e-8));
  }
}
