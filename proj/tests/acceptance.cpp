// Acceptance gate: one line per criterion, exit status = number of failures.
//
// Every tolerance is pinned here, independent of any config file. The CLI
// binary used by the determinism criterion is injected at compile time via
// SPINOR_HARDY_CLI_PATH.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spinor_hardy/fields.hpp"
#include "spinor_hardy/hardy.hpp"
#include "spinor_hardy/pauli.hpp"
#include "spinor_hardy/quadrature.hpp"
#include "spinor_hardy/spectral.hpp"
#include "spinor_hardy/sphharm.hpp"
#include "spinor_hardy/trial.hpp"

namespace {

using namespace spinh;

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok;
  std::string detail;
};

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

std::string fix(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

Vec3 random_dir(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec3 v{n(rng), n(rng), n(rng)};
  while (norm(v) < 1e-3) v = {n(rng), n(rng), n(rng)};
  return normalized(v);
}

// ---- 1. sigma algebra -----------------------------------------------------

Outcome c1_pauli_algebra() {
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const double d = (i == j) ? 2.0 : 0.0;
      const Mat2 anti = pauli(i) * pauli(j) + pauli(j) * pauli(i) - d * identity2();
      if (anti.max_abs() != 0.0)
        return {false, "anticommutator (" + std::to_string(i) + "," + std::to_string(j) +
                           ") residual " + sci(anti.max_abs()) + ", expected exactly 0"};
    }
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_product = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Vec3 f{u(rng), u(rng), u(rng)};
    const Vec3 g{u(rng), u(rng), u(rng)};
    worst_product = std::max(worst_product, sigma_product_check(f, g));
  }
  std::normal_distribution<double> n;
  double worst_norm = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Vec3 omega = random_dir(rng);
    const Spinor s{Complex(n(rng), n(rng)), Complex(n(rng), n(rng))};
    worst_norm = std::max(worst_norm, std::abs(unit_contraction_norm(omega, s) - norm(s)));
  }
  const bool ok = worst_product < 1e-14 && worst_norm < 1e-14;
  return {ok, "9 anticommutators exact; product-formula residual " + sci(worst_product) +
                  ", unit-contraction norm drift " + sci(worst_norm) +
                  " over 1000 trials each (tol 1e-14)"};
}

// ---- 2. free spin-orbit spectrum -------------------------------------------

std::vector<double> free_ladder(int l_max) {
  std::vector<double> v;
  for (int l = 0; l <= l_max; ++l) {
    for (int k = 0; k < 2 * l + 2; ++k) v.push_back(double(l + 1));
    for (int k = 0; k < 2 * l; ++k) v.push_back(double(-l));
  }
  std::sort(v.begin(), v.end());
  return v;
}

Outcome c2_free_spectrum() {
  double worst = 0.0, worst_mu = 0.0;
  for (int l_max = 1; l_max <= 8; ++l_max) {
    const SpectrumResult res = eigenvalues(assemble_free(l_max));
    const std::vector<double> expect = free_ladder(l_max);
    if (res.eigenvalues.size() != expect.size())
      return {false, "l_max " + std::to_string(l_max) + ": got " +
                         std::to_string(res.eigenvalues.size()) + " eigenvalues, expected " +
                         std::to_string(expect.size())};
    for (std::size_t i = 0; i < expect.size(); ++i)
      worst = std::max(worst, std::abs(res.eigenvalues[i] - expect[i]));
    worst_mu = std::max(worst_mu, std::abs(res.mu1 - 1.0));
  }
  const bool ok = worst < 1e-10 && worst_mu < 1e-10;
  return {ok, "l_max 1..8: integer-ladder deviation " + sci(worst) + ", mu1 drift " +
                  sci(worst_mu) + " (tol 1e-10)"};
}

// ---- 3. gauge construction --------------------------------------------------

Outcome c3_gauge_construction() {
  const double params[3][2] = {{1.0, 0.0}, {2.0, 1.0}, {3.0, -2.5}};
  double worst_curl = 0.0, worst_closed = 0.0;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uvol(0.125, 8.0);  // |x| in [0.5, 2]
  for (const auto& p : params) {
    const GaugePotential gauge = make_gauge(example_field(p[0], p[1]));
    for (int s = 0; s < 200; ++s) {
      const Vec3 x = std::cbrt(uvol(rng)) * random_dir(rng);
      worst_curl = std::max(worst_curl, curl_residual(gauge, x, 1e-4));
      worst_closed = std::max(worst_closed, gauge_condition_residual(gauge, x).closed_form);
    }
  }
  const bool ok = worst_curl < 1e-6 && worst_closed < 1e-10;
  return {ok, "3 fields x 200 shell samples: |curl A - B| " + sci(worst_curl) +
                  " (fd h=1e-4, tol 1e-6), closed-form residual " + sci(worst_closed) +
                  " (tol 1e-10)"};
}

// ---- 4. phase intertwining ---------------------------------------------------

Outcome c4_phase_intertwining() {
  const double params[3][2] = {{1.0, 0.0}, {2.0, 1.0}, {3.0, -2.5}};
  double worst = 0.0;
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ur(0.4, 2.0);
  for (const auto& p : params) {
    const GaugePotential gauge = make_gauge(example_field(p[0], p[1]));
    for (int t = 0; t < 10; ++t) {
      const SpinorField f = random_gaussian_poly(rng);
      std::vector<Vec3> pts;
      pts.reserve(100);
      for (int i = 0; i < 100; ++i) pts.push_back(ur(rng) * random_dir(rng));
      worst = std::max(worst, phase_intertwine_residual(gauge, f, pts));
    }
  }
  return {worst < 1e-10, "3 fields x 10 trials x 100 points: |L_A(e^{i eta} phi) - "
                         "e^{i eta} L phi| " +
                             sci(worst) + " (tol 1e-10)"};
}

// ---- 5. spectrum invariance ---------------------------------------------------

Outcome c5_spectrum_invariance() {
  const GaugePotential gauge = make_gauge(example_field(1.0, 0.0));
  const SpectrumResult res = eigenvalues(assemble_magnetic(gauge, 6, SphereGrid::make(10, 20)));
  if (res.filtered.size() < 18)
    return {false, "only " + std::to_string(res.filtered.size()) +
                       " uncontaminated states retained (need >= 18)"};
  int l_cut = -1;
  for (int l = 0; l <= 6; ++l)
    if (static_cast<std::size_t>(basis_dim(l)) == res.filtered.size()) l_cut = l;
  if (l_cut < 0)
    return {false, std::to_string(res.filtered.size()) +
                       " retained states do not form complete angular shells"};
  const std::vector<double> expect = free_ladder(l_cut);
  double worst = 0.0;
  for (std::size_t i = 0; i < expect.size(); ++i)
    worst = std::max(worst, std::abs(res.filtered[i] - expect[i]));
  return {worst < 1e-8, "l_max 6, field (1,0): " + std::to_string(res.filtered.size()) +
                            " retained states match the free ladder elementwise, deviation " +
                            sci(worst) + " (tol 1e-8)"};
}

// ---- 6. energy identity residual ----------------------------------------------

Outcome c6_identity_residual() {
  const Grid3D fine = Grid3D::make(96, 32, 64, 1e-6, 30.0);
  const Grid3D coarse = Grid3D::make(48, 16, 32, 1e-6, 30.0);
  const Grid3D doubled = Grid3D::make(96, 32, 32, 1e-6, 30.0);
  const GaugePotential gauges[2] = {make_gauge(example_field(1.0, 0.0)),
                                    GaugePotential::free_field()};
  double worst_rel = 0.0, max_coarse = 0.0, max_doubled = 0.0;
  std::mt19937_64 rng(61);
  for (const GaugePotential& gauge : gauges) {
    for (int t = 0; t < 50; ++t) {
      const SpinorField f = random_gaussian_poly(rng);
      worst_rel = std::max(worst_rel, identity_terms(gauge, f, fine).relative());
      max_coarse = std::max(max_coarse, identity_terms(gauge, f, coarse).relative());
      max_doubled = std::max(max_doubled, identity_terms(gauge, f, doubled).relative());
    }
  }
  const double ratio = max_coarse / std::max(max_doubled, 1e-300);
  const bool ok = worst_rel <= 1e-6 && ratio >= 10.0;
  return {ok, "50 trials x {example field, A=0}: relative residual " + sci(worst_rel) +
                  " (tol 1e-6); doubling n_r, n_theta shrinks the worst residual " +
                  fix(ratio, 1) + "x (need >= 10x)"};
}

// ---- 7. pairing-term cancellation -----------------------------------------------

Outcome c7_pairing_cancellation() {
  const Grid3D grid = Grid3D::make(48, 16, 32, 1e-6, 30.0);
  const double params[3][2] = {{1.0, 0.0}, {2.0, 1.0}, {3.0, -2.5}};
  double worst = 0.0;
  std::mt19937_64 rng(71);
  for (const auto& p : params) {
    const GaugePotential gauge = make_gauge(example_field(p[0], p[1]));
    for (int t = 0; t < 5; ++t) {
      const SpinorField f = random_gaussian_poly(rng);
      worst = std::max(worst, identity_terms(gauge, f, grid).cancellation_pointwise_max);
    }
  }
  return {worst < 1e-10, "3 constructed gauges x 5 trials: pointwise pairing-sum integrand " +
                             sci(worst) + " (tol 1e-10)"};
}

// ---- 8. Hardy chain ordering -------------------------------------------------------

Outcome c8_hardy_chain() {
  const Grid3D grid = Grid3D::make(64, 24, 48, 1e-6, 30.0);
  std::vector<GaugePotential> gauges;
  gauges.push_back(GaugePotential::free_field());
  gauges.push_back(make_gauge(example_field(1.0, 0.0)));
  gauges.push_back(make_gauge(example_field(2.0, 1.0)));
  gauges.push_back(make_gauge(example_field(3.0, -2.5)));
  bool ordering_ok = true;
  double worst_gap = -std::numeric_limits<double>::infinity();
  double min_quotient = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(81);
  for (const GaugePotential& gauge : gauges) {
    for (int t = 0; t < 100; ++t) {
      const SpinorField f = random_gaussian_poly(rng);
      const ChainValues cv = chain_check(gauge, f, grid);
      const double slack = 1e-8 * (std::abs(cv.dirac_term) + 1.0);
      const double gap = std::max(cv.weighted_density - cv.spin_orbit_term,
                                  cv.spin_orbit_term - cv.dirac_term);
      worst_gap = std::max(worst_gap, gap);
      if (gap > slack) ordering_ok = false;
      min_quotient = std::min(min_quotient, cv.dirac_term / cv.weighted_density);
    }
  }
  const bool ok = ordering_ok && min_quotient >= 1.0 - 1e-8;
  return {ok, "4 fields x 100 trials: worst ordering violation " + sci(worst_gap) +
                  " (slack 1e-8), min quotient " + fix(min_quotient, 3) + " (floor 1 - 1e-8)"};
}

// ---- 9. sharp constant ---------------------------------------------------------------

Outcome c9_sharp_constant() {
  const std::vector<double> eps = {0.3, 0.2, 0.1, 0.05};
  const QuotientCurve curve = near_extremal_family(GaugePotential::free_field(), eps);
  if (curve.entries.size() != eps.size())
    return {false, "expected " + std::to_string(eps.size()) + " family entries, got " +
                       std::to_string(curve.entries.size())};
  double worst_model = 0.0, worst_oracle = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double e = curve.entries[i].epsilon;
    const double q = curve.entries[i].quotient;
    worst_model = std::max(worst_model, std::abs(q - (1.0 + e * e)));
    worst_oracle = std::max(worst_oracle, std::abs(q - family_quotient_1d(e)));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < curve.entries.size(); ++i)
    if (!(curve.entries[i].quotient < curve.entries[i - 1].quotient)) monotone = false;
  const double tail = curve.entries.back().quotient;
  const bool ok = worst_model <= 0.02 && worst_oracle < 1e-6 && monotone && tail <= 1.01;
  return {ok, "eps {0.3,0.2,0.1}: |q - (1+eps^2)| " + fix(worst_model) +
                  " (tol 0.02), 1d-oracle gap " + sci(worst_oracle) + "; " +
                  (monotone ? "monotone decreasing" : "NOT monotone") + ", q(0.05) = " +
                  fix(tail) + " (cap 1.01)"};
}

// ---- 10. quadrature references ----------------------------------------------------------

Outcome c10_quadrature_references() {
  const double area = integrate_sphere(SphereGrid::make(16, 32), [](const Vec3&) { return 1.0; });
  const double e_area = std::abs(area - 4.0 * kPi);

  const Grid3D grid = Grid3D::make(96, 8, 16, 1e-6, 12.0);
  const double gauss = integrate_weighted(
      grid, [](const Vec3& x) { return std::exp(-2.0 * dot(x, x)); }, RadialWeight::inv_r);
  const double e_gauss = std::abs(gauss - kPi);

  const SphereGrid gg = SphereGrid::make(12, 24);
  const int dim = sph_index(8, 8) + 1;
  std::vector<Complex> gram(static_cast<std::size_t>(dim) * dim, Complex{});
  for (const auto& node : gg.nodes) {
    const std::vector<Complex> y = sph_harm_table(8, node.omega);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        gram[static_cast<std::size_t>(i) * dim + j] += node.w * std::conj(y[i]) * y[j];
  }
  double e_gram = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      e_gram = std::max(e_gram, std::abs(gram[static_cast<std::size_t>(i) * dim + j] -
                                         Complex(i == j ? 1.0 : 0.0)));
  const bool ok = e_area < 1e-12 && e_gauss < 1e-10 && e_gram < 1e-12;
  return {ok, "sphere area drift " + sci(e_area) + " (tol 1e-12), gaussian/|x| integral drift " +
                  sci(e_gauss) + " (tol 1e-10), harmonic gram deviation " + sci(e_gram) +
                  " for l <= 8 (tol 1e-12)"};
}

// ---- 11. CLI determinism ---------------------------------------------------------------------

Outcome c11_cli_determinism() {
  const std::string cli = SPINOR_HARDY_CLI_PATH;
  struct Run {
    const char* name;
    const char* args;
  };
  const Run runs[3] = {
      {"verify-identity", "verify-identity --json --seed 9"},
      {"spectrum", "spectrum --lmax 4 --json --seed 9"},
      {"hardy", "hardy --trials 5 --csv --seed 9"},
  };
  const int threads[3] = {1, 1, 4};  // repeat at 1, then compare against 4
  for (const Run& run : runs) {
    std::array<std::string, 3> outputs;
    for (int k = 0; k < 3; ++k) {
      const std::string path =
          "/tmp/spinh_acc_" + std::string(run.name) + "_" + std::to_string(k) + ".out";
      ::setenv("SPINOR_HARDY_THREADS", std::to_string(threads[k]).c_str(), 1);
      const std::string cmd = "\"" + cli + "\" " + run.args + " --out " + path;
      const int rc = std::system(cmd.c_str());
      if (rc != 0)
        return {false, std::string(run.name) + ": exit status " + std::to_string(rc) +
                           " with SPINOR_HARDY_THREADS=" + std::to_string(threads[k])};
      std::ifstream in(path, std::ios::binary);
      outputs[k].assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
      if (outputs[k].empty()) return {false, std::string(run.name) + ": empty output"};
    }
    if (outputs[0] != outputs[1])
      return {false, std::string(run.name) + ": repeated single-thread runs differ"};
    if (outputs[0] != outputs[2])
      return {false, std::string(run.name) + ": output differs between 1 and 4 worker threads"};
  }
  ::unsetenv("SPINOR_HARDY_THREADS");
  return {true, "verify-identity/spectrum/hardy byte-identical across repeats and 1 vs 4 "
                "worker threads (fixed seed)"};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {1, "sigma algebra", &c1_pauli_algebra},
      {2, "free spin-orbit spectrum", &c2_free_spectrum},
      {3, "gauge construction", &c3_gauge_construction},
      {4, "phase intertwining", &c4_phase_intertwining},
      {5, "spectrum invariance", &c5_spectrum_invariance},
      {6, "energy identity residual", &c6_identity_residual},
      {7, "pairing-term cancellation", &c7_pairing_cancellation},
      {8, "inequality chain ordering", &c8_hardy_chain},
      {9, "sharp constant", &c9_sharp_constant},
      {10, "quadrature references", &c10_quadrature_references},
      {11, "cli determinism", &c11_cli_determinism},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    Outcome out{false, {}};
    try {
      out = e.fn();
    } catch (const std::exception& ex) {
      out = {false, std::string("unexpected exception: ") + ex.what()};
    }
    std::cout << (out.ok ? "[PASS] " : "[FAIL] ") << e.id << ". " << e.name << ": " << out.detail
              << std::endl;
    if (!out.ok) ++failures;
  }
  std::cout << "acceptance: " << (11 - failures) << "/11 criteria passed" << std::endl;
  return failures;
}
