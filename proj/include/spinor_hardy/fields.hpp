#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "spinor_hardy/pauli.hpp"
#include "spinor_hardy/poly.hpp"

namespace spinh {

//! Shell on which field and gauge evaluators are defined. Evaluation
//! outside raises a range error rather than extrapolating.
struct WorkingRange {
  double r_min = 1e-6;
  double r_max = 50.0;
};

class RangeError : public std::domain_error {
  using std::domain_error::domain_error;
};

//! Radial factor phi of a transversal field, together with its primitive
//! P(r) = int_0^r s phi(s) ds. P is the quantity the gauge construction
//! actually consumes; it must stay finite on the working range.
class RadialProfile {
 public:
  //! phi(r) = lambda r^{alpha+1}; closed-form primitive, needs alpha > -3.
  static RadialProfile power_law(double lambda, double alpha);
  static RadialProfile zero();
  //! phi from an expression in r; primitive by adaptive quadrature with a
  //! power-law substitution near 0 when the profile is singular there.
  static RadialProfile from_expression(const std::string& src);

  double phi(double r) const;
  double primitive(double r) const;
  bool analytic_primitive() const { return analytic_primitive_; }
  bool is_zero() const { return zero_; }
  //! True when phi blows up towards r = 0 (still integrable against s ds).
  bool singular_near_zero() const { return singular_; }
  const std::string& description() const { return description_; }
  const WorkingRange& range() const { return range_; }

 private:
  std::function<double(double)> phi_;
  std::function<double(double)> primitive_;
  bool analytic_primitive_ = false;
  bool zero_ = false;
  bool singular_ = false;
  std::string description_;
  WorkingRange range_;
};

//! Degree-0 angular factor g, stored as g(x) = S(x)/r^d for a homogeneous
//! polynomial S of degree d. grad_g is the gradient of that extension:
//! homogeneous of degree -1 and tangential by Euler's identity.
class AngularProfile {
 public:
  AngularProfile(std::string name, int degree, RPoly numerator);

  double g(const Vec3& x) const;
  Vec3 grad_g(const Vec3& x) const;
  const std::string& name() const { return name_; }
  int degree() const { return degree_; }

 private:
  std::string name_;
  int degree_;
  RPoly S_;
  std::array<RPoly, 3> grad_;
};

//! Built-in catalog of angular profiles; names are the numerator
//! polynomials ("const", "z", "xy", "3z2-r2", ...).
const std::vector<std::string>& angular_catalog_names();
const AngularProfile& angular_profile(const std::string& name);

//! B(x) = phi(r) grad_g(x) ^ x.
struct TransversalFieldSpec {
  RadialProfile radial;
  AngularProfile angular;
};

Vec3 eval_B(const TransversalFieldSpec& spec, const Vec3& x);

//! phi(r) = lambda r^{alpha+1}, g = z/r; B = lambda r^alpha (-y, x, 0).
TransversalFieldSpec example_field(double lambda, double alpha);

//! The distinguished gauge A = 1/2 phi(r) g x - 1/2 P(r) grad_g, whose
//! radial and angular pieces obey the cancellation
//! d/dr (x^A) + x^grad(A.x/r) = 0 identically. The free (A = 0) gauge is
//! the same object with a zero profile and carries no range restriction.
class GaugePotential {
 public:
  static GaugePotential free_field();

  bool is_free() const { return free_; }
  const TransversalFieldSpec& spec() const { return *spec_; }
  const WorkingRange& range() const { return range_; }

  //! Radial data shared by every evaluator at fixed |x|; gauge evaluation
  //! on a product grid should hoist this out of the angular loop.
  struct Radial {
    double r = 0.0, phi = 0.0, P = 0.0;
  };
  Radial radial_at(double r) const;

  Vec3 vector_potential(const Vec3& x) const;
  double radial_component(const Vec3& x) const;  // A.x/r = 1/2 phi(r) g r
  Vec3 x_wedge_A(const Vec3& x) const;           // = -1/2 P(r) x^grad_g
  Vec3 dr_x_wedge_A(const Vec3& x) const;        // = 1/2 r B(x)
  Vec3 x_wedge_grad_Ar(const Vec3& x) const;     // = -1/2 r B(x)
  Vec3 field(const Vec3& x) const;               // B
  double eta(const Vec3& x) const;               // 1/2 P(r) g
  Vec3 grad_eta(const Vec3& x) const;

 private:
  GaugePotential() = default;
  std::shared_ptr<const TransversalFieldSpec> spec_;
  WorkingRange range_;
  bool free_ = true;
  friend GaugePotential make_gauge(const TransversalFieldSpec&);
};

//! Builds the gauge and verifies the primitive is finite across the
//! working range; divergent primitives surface as a singularity error.
GaugePotential make_gauge(const TransversalFieldSpec& spec);

//! |curl A - B| at x by central differences of step h.
double curl_residual(const GaugePotential& gauge, const Vec3& x, double h);

//! Residual of the radial/angular cancellation, via the closed forms and
//! independently via finite differences of A.x/r and x^A.
struct GaugeConditionResidual {
  double closed_form;
  double finite_difference;
};
GaugeConditionResidual gauge_condition_residual(const GaugePotential& gauge, const Vec3& x,
                                                double h = 0.0);

//! Default finite-difference step at x.
inline double fd_step(const Vec3& x) { return 1e-4 * std::max(1.0, norm(x)); }

RadialProfile parse_radial_expression(const std::string& src);

}  // namespace spinh
