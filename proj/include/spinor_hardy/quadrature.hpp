#pragma once

#include <functional>
#include <vector>

#include "spinor_hardy/pauli.hpp"

namespace spinh {

//! Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n-1.
struct QuadratureRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule1D gauss_legendre(int n);

enum class RadialMap { linear, log };

//! One-dimensional radial rule on [r_min, r_max]. Weights carry the map
//! jacobian only; volume integrals multiply by r^2 separately.
//!
//! The log map is a two-panel composite: a log-spaced panel from r_min up
//! to 1 and a linear panel from 1 to r_max, half the nodes each. That
//! resolves both the r -> 0 singularities and the smooth bulk without
//! wasting nodes at large radii on logarithmic clustering. When the range
//! lies entirely on one side of 1 a single log panel is used.
struct RadialGrid {
  std::vector<double> r;
  std::vector<double> w;
  double r_min = 0.0, r_max = 0.0;
  RadialMap map = RadialMap::log;

  static RadialGrid make(int n, double r_min, double r_max, RadialMap map);
  //! Log-spaced Gauss panels between consecutive breakpoints; used when an
  //! integrand has known structure (kinks, ramps) at specific radii.
  static RadialGrid composite_log(const std::vector<double>& breakpoints,
                                  int nodes_per_panel);
  int size() const { return static_cast<int>(r.size()); }
};

//! Product rule on the unit sphere: Gauss-Legendre in cos(theta) crossed
//! with a uniform azimuthal grid. Integrates spherical polynomials up to
//! degree `exactness` exactly.
struct SphereGrid {
  struct Node {
    Vec3 omega;
    double w;
  };
  std::vector<Node> nodes;
  int n_theta = 0, n_phi = 0;
  int exactness = 0;

  static SphereGrid make(int n_theta, int n_phi);
  int size() const { return static_cast<int>(nodes.size()); }
};

//! Tensor grid for volume integrals over the shell r_min <= |x| <= r_max.
struct Grid3D {
  RadialGrid radial;
  SphereGrid sphere;

  static Grid3D make(int n_r, int n_theta, int n_phi, double r_min, double r_max,
                     RadialMap map = RadialMap::log);
  std::size_t size() const {
    return static_cast<std::size_t>(radial.size()) * sphere.nodes.size();
  }
  //! Deterministic volume integral: per-node terms are materialised and
  //! pairwise-summed, so the result is independent of worker count.
  double integrate(const std::function<double(const Vec3&)>& f) const;
};

double integrate_sphere(const SphereGrid& grid,
                        const std::function<double(const Vec3&)>& f);

enum class RadialWeight { one, r, inv_r };

//! Integral of f(x) * weight(|x|) over the shell, f real-valued (typically
//! |.|^2 of an operator output). A non-finite sample aborts with the node
//! location in the message.
double integrate_weighted(const Grid3D& grid, const std::function<double(const Vec3&)>& f,
                          RadialWeight weight);

//! Adaptive bisection with a 15-point Gauss kernel. Throws std::runtime_error
//! when the requested tolerance is unreachable within max_depth levels or the
//! integrand evaluates to a non-finite value.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-13, int max_depth = 48);

}  // namespace spinh
