#pragma once

#include <random>
#include <vector>

#include "spinor_hardy/calculus.hpp"
#include "spinor_hardy/fields.hpp"
#include "spinor_hardy/poly.hpp"

namespace spinh {

//! e^{-a r^2} (up, down); radial when the amplitudes are constants.
SpinorField gaussian_radial(double a, Complex up = 1.0, Complex down = 0.0);

//! e^{-a r^2} times the solid harmonic r^l Y_l^m placed in spin slot
//! s in {1, 2}; available for l <= 2.
SpinorField gaussian_times_basis(double a, int l, int m, int s);

//! Gaussian envelope times a random complex polynomial of degree <= 2 in
//! each component; the workhorse of randomized property checks.
SpinorField random_gaussian_poly(std::mt19937_64& rng);

//! General envelope-times-polynomial field with analytic jacobian.
SpinorField gaussian_poly_field(double a, CPoly up, CPoly down, std::string tag);

//! e^{i eta} phi with the gauge's phase; jacobian by the product rule.
SpinorField phase_wrapped(const GaugePotential& gauge, SpinorField base);

//! phi(x/|x|): the degree-0 homogeneous extension of the restriction of
//! phi to the unit sphere. Jacobian is the tangentially projected one.
SpinorField degree0_extension(SpinorField base);

//! Near-extremal radial profile r^{-1+eps} / r^{-1-eps}, written in the
//! log variable t = ln r as v(t) = r f(r) = e^{-eps |t|}, with the kink
//! at t = 0 smoothed over [-w, w] and smooth cutoff ramps at the support
//! ends. The Hardy quotient of the resulting field is 1 + eps^2 up to
//! smoothing and cutoff corrections.
class PiecewisePowerProfile {
 public:
  //! Support half-widths default to min(4/eps, 220) in t; a gauge with a
  //! bounded working range clamps them to stay inside it.
  PiecewisePowerProfile(double epsilon, double smoothing_w, const GaugePotential& gauge);

  double v(double t) const;
  double dv(double t) const;
  double f(double r) const;       // v(ln r) / r
  double df(double r) const;      // (dv - v) / r^2
  SpinorField field() const;

  double epsilon() const { return epsilon_; }
  double t_lo() const { return t_lo_; }
  double t_hi() const { return t_hi_; }
  double ramp() const { return ramp_; }
  double smoothing() const { return w_; }
  //! Radii bounding the structural pieces (cutoffs, ramps, kink window),
  //! extended by the factor-2 margins; panel edges for a composite grid.
  std::vector<double> radial_breakpoints() const;

 private:
  double epsilon_, w_;
  double t_lo_, t_hi_;  // support is [e^{t_lo}, e^{t_hi}]
  double ramp_ = 1.0;   // cutoff blend length in t
};

}  // namespace spinh
