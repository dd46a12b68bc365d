#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spinor_hardy/calculus.hpp"
#include "spinor_hardy/fields.hpp"
#include "spinor_hardy/quadrature.hpp"

namespace spinh {

//! Position of Y_l^m tensor e_s inside the truncated basis; the flat
//! layout interleaves the two spin slots per scalar harmonic.
struct BasisIndex {
  int l, m, s;  // s in {1, 2}
};

inline int basis_dim(int l_max) { return 2 * (l_max + 1) * (l_max + 1); }
inline int basis_flat(const BasisIndex& b) { return 2 * (b.l * b.l + b.l + b.m) + (b.s - 1); }
BasisIndex basis_unflat(int flat);

//! The spin-orbit operator sigma.L_A + 1 truncated to l <= l_max.
struct SpinOrbitMatrix {
  Eigen::MatrixXcd mat;
  int l_max = 0;
  enum class Tag { free_gauge, magnetic } tag = Tag::free_gauge;
  double hermiticity_residual = 0.0;  // max |M - M^dagger|
  //! Set when the sphere rule cannot integrate conj(Y) W Y exactly.
  bool exactness_warning = false;
};

//! sigma.L + 1 from the ladder action on Y_l^m; block-diagonal in l.
SpinOrbitMatrix assemble_free(int l_max);

//! Free matrix plus the multiplication operator sigma.(x ^ A) restricted
//! to the unit sphere, assembled by sphere quadrature.
SpinOrbitMatrix assemble_magnetic(const GaugePotential& gauge, int l_max,
                                  const SphereGrid& grid);

struct SpectrumResult {
  std::vector<double> eigenvalues;  // full truncated spectrum, ascending
  //! Spectrum after dropping eigenvectors with significant weight in the
  //! top two l-shells. Multiplication by g couples neighbouring shells, so
  //! only eigenvectors clear of the truncation edge are trustworthy; for
  //! block-diagonal (free) matrices the filter is a no-op by construction
  //! of mu1/lambda1 below.
  std::vector<double> filtered;
  int dropped = 0;
  double contamination_tol = 1e-8;
  double mu1 = 0.0;      // smallest nonnegative eigenvalue
  double lambda1 = 0.0;  // magnitude of the negative eigenvalue closest to 0; NaN if none
  double hermiticity_residual = 0.0;
};

//! Dense Hermitian eigensolve. Requires hermiticity_residual < 1e-8.
//! mu1/lambda1 come from the filtered list for magnetic matrices and from
//! the full spectrum for free ones (which have no truncation leakage).
SpectrumResult eigenvalues(const SpinOrbitMatrix& mat);

//! max over sample points of |L_A(e^{i eta} phi) - e^{i eta} L phi|.
double phase_intertwine_residual(const GaugePotential& gauge, const SpinorField& field,
                                 std::span<const Vec3> points,
                                 DerivMethod method = DerivMethod::analytic);

//! L2(S^2) norms (|(sigma.L_A + 1)u|, |u|) for the degree-0 extension u of
//! the field's restriction to the sphere; the first dominates the second.
std::pair<double, double> sphere_norm_bound_check(const SpinorField& field,
                                                  const GaugePotential& gauge,
                                                  const SphereGrid& grid);

}  // namespace spinh
