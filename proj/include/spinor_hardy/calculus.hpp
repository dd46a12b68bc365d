#pragma once

#include <functional>
#include <limits>
#include <string>

#include "spinor_hardy/fields.hpp"
#include "spinor_hardy/pauli.hpp"

namespace spinh {

enum class DerivMethod { analytic, fd2, fd4 };

//! A spinor-valued field on R^3. The jacobian slot, when set, returns the
//! three analytic partials; operators fall back to central differences
//! otherwise. support_radius marks where |eval| has decayed below
//! numerical relevance, so quadrature ranges can be validated.
struct SpinorField {
  std::function<Spinor(const Vec3&)> eval;
  std::function<SpinorJet(const Vec3&)> jacobian;
  double support_radius = std::numeric_limits<double>::infinity();
  std::string tag;
};

//! Pointwise operator output, labelled with what produced it.
struct OperatorResult {
  Spinor value;
  const char* provenance;
};

//! Inner radius below which pointwise operators refuse to evaluate;
//! integrals stay away from the origin through node placement instead.
inline constexpr double kPointwiseRMin = 1e-6;

SpinorJet grad(const SpinorField& field, const Vec3& x,
               DerivMethod method = DerivMethod::analytic);

//! (grad + iA) phi, componentwise.
SpinorJet magnetic_grad(const SpinorField& field, const GaugePotential& gauge, const Vec3& x,
                        DerivMethod method = DerivMethod::analytic);

//! (x/|x|) . grad_A phi = (d/dr + i A_r) phi.
OperatorResult radial_derivative_A(const SpinorField& field, const GaugePotential& gauge,
                                   const Vec3& x, DerivMethod method = DerivMethod::analytic);

//! L phi = x ^ (-i grad) phi, or its magnetic version when a gauge is given.
SpinorJet angular_momentum(const SpinorField& field, const Vec3& x,
                           const GaugePotential* gauge = nullptr,
                           DerivMethod method = DerivMethod::analytic);

OperatorResult sigma_dot_magnetic_grad(const SpinorField& field, const GaugePotential& gauge,
                                       const Vec3& x,
                                       DerivMethod method = DerivMethod::analytic);

//! (sigma . L_A + 1) phi; pass nullptr for the free operator.
OperatorResult spin_orbit(const SpinorField& field, const GaugePotential* gauge, const Vec3& x,
                          DerivMethod method = DerivMethod::analytic);

//! Pointwise norm of sigma.grad_A phi - (sigma.x/r)(d_r^A - sigma.L_A / r) phi.
double factorization_residual(const SpinorField& field, const GaugePotential& gauge,
                              const Vec3& x, DerivMethod method = DerivMethod::analytic);

//! | |grad_A phi|^2 - |d_r^A phi|^2 - |L_A phi|^2 / r^2 |, the orthogonal
//! split of the magnetic gradient into radial and angular parts.
double pythagoras_residual(const SpinorField& field, const GaugePotential& gauge, const Vec3& x,
                           DerivMethod method = DerivMethod::analytic);

}  // namespace spinh
