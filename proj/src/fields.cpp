#include "spinor_hardy/fields.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "spinor_hardy/expr.hpp"
#include "spinor_hardy/quadrature.hpp"

namespace spinh {

namespace {

void check_radius(double r, const WorkingRange& range, const char* who) {
  if (!(r >= range.r_min * (1.0 - 1e-12)) || !(r <= range.r_max * (1.0 + 1e-12)))
    throw RangeError(std::string(who) + ": r = " + std::to_string(r) +
                     " outside the working range [" + std::to_string(range.r_min) + ", " +
                     std::to_string(range.r_max) + "]");
}

}  // namespace

RadialProfile RadialProfile::power_law(double lambda, double alpha) {
  if (!(alpha > -3.0))
    throw std::domain_error(
        "power_law: alpha must exceed -3, otherwise int_0^r s phi(s) ds diverges");
  RadialProfile p;
  p.phi_ = [lambda, alpha](double r) { return lambda * std::pow(r, alpha + 1.0); };
  p.primitive_ = [lambda, alpha](double r) {
    return lambda * std::pow(r, alpha + 3.0) / (alpha + 3.0);
  };
  p.analytic_primitive_ = true;
  p.singular_ = alpha < -1.0;
  p.description_ = "power_law(lambda=" + std::to_string(lambda) +
                   ", alpha=" + std::to_string(alpha) + ")";
  return p;
}

RadialProfile RadialProfile::zero() {
  RadialProfile p;
  p.phi_ = [](double) { return 0.0; };
  p.primitive_ = [](double) { return 0.0; };
  p.analytic_primitive_ = true;
  p.zero_ = true;
  p.description_ = "zero";
  p.range_.r_min = 0.0;
  p.range_.r_max = std::numeric_limits<double>::infinity();
  return p;
}

RadialProfile RadialProfile::from_expression(const std::string& src) {
  const RadialExpr expr = RadialExpr::parse(src);

  // Local power behaviour near 0 decides how to integrate s*phi(s). For
  // phi ~ s^q the substitution s = b t^gamma with gamma = 2/(q+2) turns
  // the primitive's integrand into ~t, which adaptive quadrature nails;
  // q <= -2 means the primitive itself diverges.
  const double h = 1e-8;
  const double v1 = expr(h), v2 = expr(2.0 * h);
  if (!std::isfinite(v1) || !std::isfinite(v2))
    throw std::runtime_error("radial profile '" + src + "' is not finite near r = 0");
  double gamma = 1.0;
  if (std::abs(v1) > 1e-300 && v1 * v2 > 0.0) {
    const double q = std::log(v2 / v1) / std::log(2.0);
    if (q <= -1.95)
      throw std::runtime_error("radial profile '" + src + "' behaves like r^" +
                               std::to_string(q) + " near 0; its primitive diverges");
    if (q < -0.25) gamma = std::min(2.0 / (q + 2.0), 60.0);
  }

  RadialProfile p;
  p.singular_ = gamma > 1.0;
  p.phi_ = [expr](double r) { return expr(r); };
  p.primitive_ = [expr, gamma](double r) {
    const double b = std::min(r, 1.0);
    // Inner piece int_0^b s phi(s) ds under s = b t^gamma.
    double acc = integrate_adaptive(
        [&expr, gamma, b](double t) {
          const double s = b * std::pow(t, gamma);
          return b * std::pow(t, gamma - 1.0) * gamma * s * expr(s);
        },
        0.0, 1.0, 1e-13);
    if (r > b)
      acc += integrate_adaptive([&expr](double s) { return s * expr(s); }, b, r, 1e-13);
    return acc;
  };
  p.description_ = src;
  return p;
}

double RadialProfile::phi(double r) const {
  check_radius(r, range_, "RadialProfile::phi");
  const double v = phi_(r);
  if (!std::isfinite(v))
    throw std::runtime_error("radial profile '" + description_ + "' is not finite at r = " +
                             std::to_string(r));
  return v;
}

double RadialProfile::primitive(double r) const {
  if (r == 0.0) return 0.0;
  if (!(r >= 0.0) || !(r <= range_.r_max * (1.0 + 1e-12)))
    throw RangeError("RadialProfile::primitive: r = " + std::to_string(r) +
                     " outside [0, " + std::to_string(range_.r_max) + "]");
  const double v = primitive_(r);
  if (!std::isfinite(v))
    throw std::runtime_error("primitive of '" + description_ + "' diverges by r = " +
                             std::to_string(r));
  return v;
}

AngularProfile::AngularProfile(std::string name, int degree, RPoly numerator)
    : name_(std::move(name)), degree_(degree), S_(std::move(numerator)) {
  if (degree < 0) throw std::invalid_argument("AngularProfile: negative degree");
  for (int axis = 0; axis < 3; ++axis) grad_[axis] = S_.derivative(axis);
}

double AngularProfile::g(const Vec3& x) const {
  const double r = norm(x);
  if (!(r > 0.0)) throw std::domain_error("AngularProfile::g: undefined at the origin");
  return S_.eval(x) / RPoly::ipow(r, degree_);
}

Vec3 AngularProfile::grad_g(const Vec3& x) const {
  const double r = norm(x);
  if (!(r > 0.0))
    throw std::domain_error("AngularProfile::grad_g: undefined at the origin");
  const double rd = RPoly::ipow(r, degree_);
  const Vec3 grad_S{grad_[0].eval(x), grad_[1].eval(x), grad_[2].eval(x)};
  // grad(S/r^d) = grad S / r^d - d S x / r^{d+2}; tangential since
  // x.grad S = d S (Euler's identity for homogeneous S).
  return (1.0 / rd) * grad_S - (degree_ * S_.eval(x) / (rd * r * r)) * x;
}

namespace {

std::vector<AngularProfile> build_catalog() {
  std::vector<AngularProfile> cat;
  cat.emplace_back("const", 0, RPoly{}.add(0, 0, 0, 1.0));
  cat.emplace_back("x", 1, RPoly{}.add(1, 0, 0, 1.0));
  cat.emplace_back("y", 1, RPoly{}.add(0, 1, 0, 1.0));
  cat.emplace_back("z", 1, RPoly{}.add(0, 0, 1, 1.0));
  cat.emplace_back("xy", 2, RPoly{}.add(1, 1, 0, 1.0));
  cat.emplace_back("yz", 2, RPoly{}.add(0, 1, 1, 1.0));
  cat.emplace_back("zx", 2, RPoly{}.add(1, 0, 1, 1.0));
  cat.emplace_back("x2-y2", 2, RPoly{}.add(2, 0, 0, 1.0).add(0, 2, 0, -1.0));
  cat.emplace_back("3z2-r2", 2,
                   RPoly{}.add(0, 0, 2, 2.0).add(2, 0, 0, -1.0).add(0, 2, 0, -1.0));
  cat.emplace_back("xyz", 3, RPoly{}.add(1, 1, 1, 1.0));
  cat.emplace_back("5z3-3zr2", 3,
                   RPoly{}.add(0, 0, 3, 2.0).add(2, 0, 1, -3.0).add(0, 2, 1, -3.0));
  cat.emplace_back("35z4-30z2r2+3r4", 4,
                   RPoly{}
                       .add(4, 0, 0, 3.0)
                       .add(0, 4, 0, 3.0)
                       .add(0, 0, 4, 8.0)
                       .add(2, 2, 0, 6.0)
                       .add(2, 0, 2, -24.0)
                       .add(0, 2, 2, -24.0));
  return cat;
}

const std::vector<AngularProfile>& catalog() {
  static const std::vector<AngularProfile> cat = build_catalog();
  return cat;
}

}  // namespace

const std::vector<std::string>& angular_catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const AngularProfile& p : catalog()) out.push_back(p.name());
    return out;
  }();
  return names;
}

const AngularProfile& angular_profile(const std::string& name) {
  for (const AngularProfile& p : catalog())
    if (p.name() == name) return p;
  throw std::invalid_argument("angular_profile: no catalog entry named '" + name + "'");
}

Vec3 eval_B(const TransversalFieldSpec& spec, const Vec3& x) {
  const double r = norm(x);
  if (!(r > 0.0)) throw std::domain_error("eval_B: singular at the origin");
  if (spec.radial.is_zero()) return {0.0, 0.0, 0.0};
  return spec.radial.phi(r) * cross(spec.angular.grad_g(x), x);
}

TransversalFieldSpec example_field(double lambda, double alpha) {
  if (lambda == 0.0)
    throw std::invalid_argument("example_field: lambda must be nonzero");
  return {RadialProfile::power_law(lambda, alpha), angular_profile("z")};
}

GaugePotential GaugePotential::free_field() {
  GaugePotential g;
  g.spec_ = std::make_shared<TransversalFieldSpec>(
      TransversalFieldSpec{RadialProfile::zero(), angular_profile("const")});
  g.range_ = g.spec_->radial.range();
  g.free_ = true;
  return g;
}

GaugePotential make_gauge(const TransversalFieldSpec& spec) {
  GaugePotential g;
  g.spec_ = std::make_shared<TransversalFieldSpec>(spec);
  g.range_ = spec.radial.range();
  g.free_ = spec.radial.is_zero();
  if (!g.free_) {
    try {
      (void)spec.radial.primitive(g.range_.r_max);
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("make_gauge: primitive not finite on the "
                                           "working range: ") +
                               e.what());
    }
  }
  return g;
}

GaugePotential::Radial GaugePotential::radial_at(double r) const {
  if (free_) return {r, 0.0, 0.0};
  return {r, spec_->radial.phi(r), spec_->radial.primitive(r)};
}

Vec3 GaugePotential::vector_potential(const Vec3& x) const {
  if (free_) return {0.0, 0.0, 0.0};
  const Radial rad = radial_at(norm(x));
  return 0.5 * rad.phi * spec_->angular.g(x) * x - 0.5 * rad.P * spec_->angular.grad_g(x);
}

double GaugePotential::radial_component(const Vec3& x) const {
  if (free_) return 0.0;
  const Radial rad = radial_at(norm(x));
  return 0.5 * rad.phi * spec_->angular.g(x) * rad.r;
}

Vec3 GaugePotential::x_wedge_A(const Vec3& x) const {
  if (free_) return {0.0, 0.0, 0.0};
  const Radial rad = radial_at(norm(x));
  return -0.5 * rad.P * cross(x, spec_->angular.grad_g(x));
}

Vec3 GaugePotential::dr_x_wedge_A(const Vec3& x) const {
  if (free_) return {0.0, 0.0, 0.0};
  const Radial rad = radial_at(norm(x));
  return 0.5 * rad.r * rad.phi * cross(spec_->angular.grad_g(x), x);
}

Vec3 GaugePotential::x_wedge_grad_Ar(const Vec3& x) const {
  if (free_) return {0.0, 0.0, 0.0};
  const Radial rad = radial_at(norm(x));
  return -0.5 * rad.r * rad.phi * cross(spec_->angular.grad_g(x), x);
}

Vec3 GaugePotential::field(const Vec3& x) const {
  if (free_) return {0.0, 0.0, 0.0};
  return eval_B(*spec_, x);
}

double GaugePotential::eta(const Vec3& x) const {
  if (free_) return 0.0;
  const Radial rad = radial_at(norm(x));
  return 0.5 * rad.P * spec_->angular.g(x);
}

Vec3 GaugePotential::grad_eta(const Vec3& x) const {
  if (free_) return {0.0, 0.0, 0.0};
  const Radial rad = radial_at(norm(x));
  // P'(r) = r phi(r), so the radial part of grad eta is 1/2 phi g x.
  return 0.5 * rad.phi * spec_->angular.g(x) * x + 0.5 * rad.P * spec_->angular.grad_g(x);
}

double curl_residual(const GaugePotential& gauge, const Vec3& x, double h) {
  const double r = norm(x);
  if (!(r > 0.0)) throw std::domain_error("curl_residual: singular at the origin");
  if (!gauge.is_free() && r - h < gauge.range().r_min)
    throw RangeError("curl_residual: stencil of step " + std::to_string(h) +
                     " crosses the inner working radius");
  std::array<Vec3, 3> dA;  // dA[j] = dA/dx_j
  for (int j = 0; j < 3; ++j) {
    Vec3 xp = x, xm = x;
    (j == 0 ? xp.x : j == 1 ? xp.y : xp.z) += h;
    (j == 0 ? xm.x : j == 1 ? xm.y : xm.z) -= h;
    const Vec3 ap = gauge.vector_potential(xp);
    const Vec3 am = gauge.vector_potential(xm);
    dA[j] = (1.0 / (2.0 * h)) * (ap - am);
  }
  const Vec3 curl{dA[1].z - dA[2].y, dA[2].x - dA[0].z, dA[0].y - dA[1].x};
  return norm(curl - gauge.field(x));
}

GaugeConditionResidual gauge_condition_residual(const GaugePotential& gauge, const Vec3& x,
                                                double h) {
  const double r = norm(x);
  if (!(r > 0.0))
    throw std::domain_error("gauge_condition_residual: singular at the origin");
  if (h <= 0.0) h = fd_step(x);

  GaugeConditionResidual res{};
  res.closed_form = norm(gauge.dr_x_wedge_A(x) + gauge.x_wedge_grad_Ar(x));

  // Radial derivative of x^A along the ray through x.
  const double scale_p = (r + h) / r, scale_m = (r - h) / r;
  const Vec3 fp = gauge.x_wedge_A(scale_p * x);
  const Vec3 fm = gauge.x_wedge_A(scale_m * x);
  const Vec3 dr_wedge = (1.0 / (2.0 * h)) * (fp - fm);

  Vec3 grad_ar;
  for (int j = 0; j < 3; ++j) {
    Vec3 xp = x, xm = x;
    (j == 0 ? xp.x : j == 1 ? xp.y : xp.z) += h;
    (j == 0 ? xm.x : j == 1 ? xm.y : xm.z) -= h;
    const double d = (gauge.radial_component(xp) - gauge.radial_component(xm)) / (2.0 * h);
    (j == 0 ? grad_ar.x : j == 1 ? grad_ar.y : grad_ar.z) = d;
  }
  res.finite_difference = norm(dr_wedge + cross(x, grad_ar));
  return res;
}

RadialProfile parse_radial_expression(const std::string& src) {
  return RadialProfile::from_expression(src);
}

}  // namespace spinh
