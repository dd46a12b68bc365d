#include "spinor_hardy/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spinor_hardy/summation.hpp"

namespace spinh {

QuadratureRule1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  QuadratureRule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // i-th root of P_n in descending order, then Newton.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2 * k + 1) * z * p1 - k * p2) / (k + 1);
      }
      // p0 = P_n(z), p1 = P_{n-1}(z).
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return rule;
}

namespace {

void append_linear_panel(RadialGrid& g, int n, double a, double b) {
  const QuadratureRule1D rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    g.r.push_back(mid + half * rule.nodes[i]);
    g.w.push_back(half * rule.weights[i]);
  }
}

void append_log_panel(RadialGrid& g, int n, double a, double b) {
  const QuadratureRule1D rule = gauss_legendre(n);
  const double ta = std::log(a), tb = std::log(b);
  const double mid = 0.5 * (ta + tb), half = 0.5 * (tb - ta);
  for (int i = 0; i < n; ++i) {
    const double r = std::exp(mid + half * rule.nodes[i]);
    g.r.push_back(r);
    g.w.push_back(half * rule.weights[i] * r);  // dr = r dt
  }
}

}  // namespace

RadialGrid RadialGrid::make(int n, double r_min, double r_max, RadialMap map) {
  if (n < 2) throw std::invalid_argument("RadialGrid: need at least two nodes");
  if (!(r_min > 0.0) || !(r_min < r_max))
    throw std::invalid_argument("RadialGrid: need 0 < r_min < r_max");

  RadialGrid g;
  g.r_min = r_min;
  g.r_max = r_max;
  g.map = map;
  g.r.reserve(n);
  g.w.reserve(n);
  if (map == RadialMap::linear) {
    append_linear_panel(g, n, r_min, r_max);
  } else if (r_max <= 1.0 || r_min >= 1.0) {
    append_log_panel(g, n, r_min, r_max);
  } else {
    const int n_log = n / 2;
    append_log_panel(g, n_log, r_min, 1.0);
    append_linear_panel(g, n - n_log, 1.0, r_max);
  }
  return g;
}

RadialGrid RadialGrid::composite_log(const std::vector<double>& breakpoints,
                                     int nodes_per_panel) {
  if (breakpoints.size() < 2)
    throw std::invalid_argument("composite_log: need at least two breakpoints");
  if (nodes_per_panel < 2)
    throw std::invalid_argument("composite_log: need at least two nodes per panel");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] > 0.0) || !(breakpoints[i] < breakpoints[i + 1]))
      throw std::invalid_argument("composite_log: breakpoints must be positive ascending");
  RadialGrid g;
  g.r_min = breakpoints.front();
  g.r_max = breakpoints.back();
  g.map = RadialMap::log;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    append_log_panel(g, nodes_per_panel, breakpoints[i], breakpoints[i + 1]);
  return g;
}

SphereGrid SphereGrid::make(int n_theta, int n_phi) {
  if (n_theta < 2 || n_phi < 4)
    throw std::invalid_argument("SphereGrid: need n_theta >= 2 and n_phi >= 4");
  SphereGrid grid;
  grid.n_theta = n_theta;
  grid.n_phi = n_phi;
  grid.exactness = std::min(2 * n_theta - 1, n_phi - 1);
  grid.nodes.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  const QuadratureRule1D rule = gauss_legendre(n_theta);
  const double wphi = 2.0 * M_PI / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double c = rule.nodes[i];  // cos(theta)
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = wphi * j;
      grid.nodes.push_back({{s * std::cos(phi), s * std::sin(phi), c},
                            rule.weights[i] * wphi});
    }
  }
  return grid;
}

Grid3D Grid3D::make(int n_r, int n_theta, int n_phi, double r_min, double r_max,
                    RadialMap map) {
  return {RadialGrid::make(n_r, r_min, r_max, map), SphereGrid::make(n_theta, n_phi)};
}

double Grid3D::integrate(const std::function<double(const Vec3&)>& f) const {
  const std::size_t ns = sphere.nodes.size();
  std::vector<double> terms(size());
  parallel_for(radial.r.size(), [&](std::size_t i) {
    const double r = radial.r[i];
    const double wr = radial.w[i] * r * r;
    for (std::size_t j = 0; j < ns; ++j) {
      const SphereGrid::Node& node = sphere.nodes[j];
      terms[i * ns + j] = wr * node.w * f(r * node.omega);
    }
  });
  return pairwise_sum(terms);
}

double integrate_sphere(const SphereGrid& grid,
                        const std::function<double(const Vec3&)>& f) {
  std::vector<double> terms(grid.nodes.size());
  for (std::size_t j = 0; j < terms.size(); ++j)
    terms[j] = grid.nodes[j].w * f(grid.nodes[j].omega);
  return pairwise_sum(terms);
}

double integrate_weighted(const Grid3D& grid, const std::function<double(const Vec3&)>& f,
                          RadialWeight weight) {
  const std::size_t ns = grid.sphere.nodes.size();
  std::vector<double> terms(grid.size());
  std::vector<std::size_t> bad(grid.radial.r.size(), std::size_t(-1));
  parallel_for(grid.radial.r.size(), [&](std::size_t i) {
    const double r = grid.radial.r[i];
    const double wfac = weight == RadialWeight::one ? 1.0
                        : weight == RadialWeight::r ? r
                                                    : 1.0 / r;
    const double wr = grid.radial.w[i] * r * r * wfac;
    for (std::size_t j = 0; j < ns; ++j) {
      const SphereGrid::Node& node = grid.sphere.nodes[j];
      const double v = f(r * node.omega);
      if (!std::isfinite(v)) {
        bad[i] = j;
        return;
      }
      terms[i * ns + j] = wr * node.w * v;
    }
  });
  for (std::size_t i = 0; i < bad.size(); ++i) {
    if (bad[i] == std::size_t(-1)) continue;
    const Vec3 omega = grid.sphere.nodes[bad[i]].omega;
    throw std::runtime_error(
        "integrate_weighted: non-finite integrand at node r = " +
        std::to_string(grid.radial.r[i]) + ", omega = (" + std::to_string(omega.x) + ", " +
        std::to_string(omega.y) + ", " + std::to_string(omega.z) + ")");
  }
  return pairwise_sum(terms);
}

namespace {

double gauss15(const std::function<double(double)>& f, double a, double b,
               double* l1 = nullptr) {
  static const QuadratureRule1D rule = gauss_legendre(15);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0, m = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double v = f(mid + half * rule.nodes[i]);
    s += rule.weights[i] * v;
    m += rule.weights[i] * std::abs(v);
  }
  if (l1) *l1 = half * m;
  return half * s;
}

double adapt_rec(const std::function<double(double)>& f, double a, double b,
                 double whole, double budget, int depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const double left = gauss15(f, a, m);
  const double right = gauss15(f, m, b);
  if (!std::isfinite(left) || !std::isfinite(right))
    throw std::runtime_error("integrate_adaptive: integrand is not finite");
  if (std::abs(left + right - whole) <= budget) return left + right;
  if (depth >= max_depth)
    throw std::runtime_error(
        "integrate_adaptive: no convergence at depth " + std::to_string(max_depth) +
        " (integrand may have a non-integrable singularity)");
  return adapt_rec(f, a, m, left, 0.5 * budget, depth + 1, max_depth) +
         adapt_rec(f, m, b, right, 0.5 * budget, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_depth) {
  if (!(b >= a)) throw std::invalid_argument("integrate_adaptive: bounds out of order");
  if (a == b) return 0.0;
  double l1 = 0.0;
  const double whole = gauss15(f, a, b, &l1);
  if (!std::isfinite(whole))
    throw std::runtime_error("integrate_adaptive: integrand is not finite");
  // Scale by the L1 mass, not the (possibly cancelling) signed value.
  const double budget = rel_tol * std::max({std::abs(whole), 0.5 * l1, 1e-30});
  return adapt_rec(f, a, b, whole, budget, 0, max_depth);
}

}  // namespace spinh
