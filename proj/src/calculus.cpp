#include "spinor_hardy/calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace spinh {

namespace {

void require_off_origin(const Vec3& x, const char* who) {
  if (norm(x) < kPointwiseRMin)
    throw std::domain_error(std::string(who) + ": point too close to the origin (|x| < " +
                            std::to_string(kPointwiseRMin) + ")");
}

Vec3 shifted(const Vec3& x, int axis, double d) {
  Vec3 y = x;
  (axis == 0 ? y.x : axis == 1 ? y.y : y.z) += d;
  return y;
}

SpinorJet fd_jet(const SpinorField& field, const Vec3& x, bool fourth_order) {
  const double h = fd_step(x);
  SpinorJet jet;
  for (int j = 0; j < 3; ++j) {
    if (fourth_order) {
      const Spinor f2p = field.eval(shifted(x, j, 2 * h));
      const Spinor fp = field.eval(shifted(x, j, h));
      const Spinor fm = field.eval(shifted(x, j, -h));
      const Spinor f2m = field.eval(shifted(x, j, -2 * h));
      jet[j] = (1.0 / (12.0 * h)) * (-f2p + 8.0 * fp - 8.0 * fm + f2m);
    } else {
      const Spinor fp = field.eval(shifted(x, j, h));
      const Spinor fm = field.eval(shifted(x, j, -h));
      jet[j] = (1.0 / (2.0 * h)) * (fp - fm);
    }
  }
  return jet;
}

//! x ^ jet, the wedge of the position with a spinor-valued triple.
SpinorJet wedge(const Vec3& x, const SpinorJet& jet) {
  return {x.y * jet[2] - x.z * jet[1],
          x.z * jet[0] - x.x * jet[2],
          x.x * jet[1] - x.y * jet[0]};
}

}  // namespace

SpinorJet grad(const SpinorField& field, const Vec3& x, DerivMethod method) {
  if (method == DerivMethod::analytic) {
    if (!field.jacobian)
      throw std::invalid_argument(
          "grad: analytic jacobian requested but the field has none");
    return field.jacobian(x);
  }
  return fd_jet(field, x, method == DerivMethod::fd4);
}

SpinorJet magnetic_grad(const SpinorField& field, const GaugePotential& gauge, const Vec3& x,
                        DerivMethod method) {
  SpinorJet jet = grad(field, x, method);
  if (!gauge.is_free()) {
    const Vec3 a = gauge.vector_potential(x);
    const Spinor phi = field.eval(x);
    jet[0] = jet[0] + (kImag * a.x) * phi;
    jet[1] = jet[1] + (kImag * a.y) * phi;
    jet[2] = jet[2] + (kImag * a.z) * phi;
  }
  return jet;
}

OperatorResult radial_derivative_A(const SpinorField& field, const GaugePotential& gauge,
                                   const Vec3& x, DerivMethod method) {
  require_off_origin(x, "radial_derivative_A");
  const SpinorJet jet = magnetic_grad(field, gauge, x, method);
  const Vec3 omega = normalized(x);
  return {omega.x * jet[0] + omega.y * jet[1] + omega.z * jet[2], "radial_derivative_A"};
}

SpinorJet angular_momentum(const SpinorField& field, const Vec3& x, const GaugePotential* gauge,
                           DerivMethod method) {
  require_off_origin(x, "angular_momentum");
  const SpinorJet jet = grad(field, x, method);
  // x ^ (-i grad) phi
  SpinorJet l = wedge(x, jet);
  for (Spinor& c : l) c = (-kImag) * c;
  if (gauge != nullptr && !gauge->is_free()) {
    const Vec3 w = gauge->x_wedge_A(x);
    const Spinor phi = field.eval(x);
    l[0] = l[0] + w.x * phi;
    l[1] = l[1] + w.y * phi;
    l[2] = l[2] + w.z * phi;
  }
  return l;
}

OperatorResult sigma_dot_magnetic_grad(const SpinorField& field, const GaugePotential& gauge,
                                       const Vec3& x, DerivMethod method) {
  const SpinorJet jet = magnetic_grad(field, gauge, x, method);
  return {sigma_contract(jet), "sigma_dot_magnetic_grad"};
}

OperatorResult spin_orbit(const SpinorField& field, const GaugePotential* gauge, const Vec3& x,
                          DerivMethod method) {
  require_off_origin(x, "spin_orbit");
  const SpinorJet l = angular_momentum(field, x, gauge, method);
  return {sigma_contract(l) + field.eval(x), "spin_orbit"};
}

double factorization_residual(const SpinorField& field, const GaugePotential& gauge,
                              const Vec3& x, DerivMethod method) {
  require_off_origin(x, "factorization_residual");
  const double r = norm(x);
  const Vec3 omega = normalized(x);

  const Spinor lhs = sigma_dot_magnetic_grad(field, gauge, x, method).value;
  const Spinor dr = radial_derivative_A(field, gauge, x, method).value;
  const Spinor so = spin_orbit(field, &gauge, x, method).value;
  const Spinor phi = field.eval(x);
  // sigma.L_A phi = (sigma.L_A + 1) phi - phi.
  const Spinor inner = dr - (1.0 / r) * (so - phi);
  const Spinor rhs = sigma_dot_apply(omega, inner);
  return norm(lhs - rhs);
}

double pythagoras_residual(const SpinorField& field, const GaugePotential& gauge, const Vec3& x,
                           DerivMethod method) {
  require_off_origin(x, "pythagoras_residual");
  const double r = norm(x);
  const SpinorJet mg = magnetic_grad(field, gauge, x, method);
  const Spinor dr = radial_derivative_A(field, gauge, x, method).value;
  const SpinorJet l = angular_momentum(field, x, &gauge, method);
  const double full = norm2(mg[0]) + norm2(mg[1]) + norm2(mg[2]);
  const double ang = norm2(l[0]) + norm2(l[1]) + norm2(l[2]);
  return std::abs(full - norm2(dr) - ang / (r * r));
}

}  // namespace spinh
