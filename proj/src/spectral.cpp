#include "spinor_hardy/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinor_hardy/sphharm.hpp"
#include "spinor_hardy/summation.hpp"
#include "spinor_hardy/trial.hpp"

namespace spinh {

BasisIndex basis_unflat(int flat) {
  const int s = flat % 2 + 1;
  const int idx = flat / 2;
  const int l = static_cast<int>(std::sqrt(double(idx)));
  const int m = idx - l * l - l;
  return {l, m, s};
}

SpinOrbitMatrix assemble_free(int l_max) {
  if (l_max < 0) throw std::invalid_argument("assemble_free: negative l_max");
  const int dim = basis_dim(l_max);
  SpinOrbitMatrix out;
  out.l_max = l_max;
  out.tag = SpinOrbitMatrix::Tag::free_gauge;
  out.mat = Eigen::MatrixXcd::Zero(dim, dim);

  // sigma.L acts as the 2x2 operator block [[L3, L-], [L+, -L3]] on
  // (phi_1, phi_2); ladder entries follow from
  // L+- Y_l^m = sqrt((l -+ m)(l +- m + 1)) Y_l^{m+-1}.
  for (int l = 0; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) {
      const int up = basis_flat({l, m, 1});
      const int dn = basis_flat({l, m, 2});
      out.mat(up, up) += Complex(m + 1.0);   // L3 + identity
      out.mat(dn, dn) += Complex(-m + 1.0);  // -L3 + identity
      if (m + 1 <= l) {
        // L- |l, m+1> = c |l, m>, feeding the spin-up row from spin-down.
        const double c = std::sqrt(double(l + m + 1) * double(l - m));
        out.mat(basis_flat({l, m, 1}), basis_flat({l, m + 1, 2})) += c;
        out.mat(basis_flat({l, m + 1, 2}), basis_flat({l, m, 1})) += c;
      }
    }
  }
  out.hermiticity_residual = (out.mat - out.mat.adjoint()).cwiseAbs().maxCoeff();
  return out;
}

SpinOrbitMatrix assemble_magnetic(const GaugePotential& gauge, int l_max,
                                  const SphereGrid& grid) {
  SpinOrbitMatrix out = assemble_free(l_max);
  if (gauge.is_free()) return out;  // A = 0 is the free operator itself
  out.tag = SpinOrbitMatrix::Tag::magnetic;

  const int deg_g = gauge.spec().angular.degree();
  out.exactness_warning = grid.exactness < 2 * l_max + deg_g;

  // Multiplication operator sigma.W with W = (x ^ A)|_{|x|=1}; its matrix
  // elements <Y_a e_s | sigma.W | Y_b e_s'> by sphere quadrature.
  const int nsph = (l_max + 1) * (l_max + 1);
  for (const SphereGrid::Node& node : grid.nodes) {
    const Vec3 w = gauge.x_wedge_A(node.omega);
    const std::vector<Complex> y = sph_harm_table(l_max, node.omega);
    const Complex wz(w.z), wm(w.x, -w.y), wp(w.x, w.y);
    for (int a = 0; a < nsph; ++a) {
      const Complex ca = std::conj(y[a]) * node.w;
      for (int b = 0; b < nsph; ++b) {
        const Complex p = ca * y[b];
        out.mat(2 * a, 2 * b) += p * wz;
        out.mat(2 * a, 2 * b + 1) += p * wm;
        out.mat(2 * a + 1, 2 * b) += p * wp;
        out.mat(2 * a + 1, 2 * b + 1) -= p * wz;
      }
    }
  }
  out.hermiticity_residual = (out.mat - out.mat.adjoint()).cwiseAbs().maxCoeff();
  return out;
}

SpectrumResult eigenvalues(const SpinOrbitMatrix& mat) {
  if (!(mat.hermiticity_residual < 1e-8))
    throw std::invalid_argument(
        "eigenvalues: matrix is not Hermitian (residual " +
        std::to_string(mat.hermiticity_residual) + "); refusing to diagonalize");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mat.mat);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenvalues: eigensolver failed to converge");

  SpectrumResult res;
  res.hermiticity_residual = mat.hermiticity_residual;
  const int dim = static_cast<int>(mat.mat.rows());
  res.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + dim);

  // Weight of each eigenvector in the top two l-shells; eigenvectors that
  // lean on the truncation edge carry contamination from the missing
  // l > l_max blocks.
  const int edge = basis_dim(std::max(mat.l_max - 2, -1));  // first edge-shell row
  if (mat.tag == SpinOrbitMatrix::Tag::magnetic && mat.l_max >= 2) {
    for (int k = 0; k < dim; ++k) {
      double leak = 0.0;
      for (int i = edge; i < dim; ++i) leak += std::norm(solver.eigenvectors()(i, k));
      if (leak < res.contamination_tol)
        res.filtered.push_back(res.eigenvalues[k]);
      else
        ++res.dropped;
    }
  } else {
    // Block-diagonal (free) matrices have no truncation leakage; the filter
    // is a no-op for them, as is any matrix too small to have edge shells.
    res.filtered = res.eigenvalues;
  }

  const std::vector<double>& pool =
      mat.tag == SpinOrbitMatrix::Tag::magnetic && !res.filtered.empty() ? res.filtered
                                                                         : res.eigenvalues;
  res.mu1 = std::numeric_limits<double>::quiet_NaN();
  res.lambda1 = std::numeric_limits<double>::quiet_NaN();
  for (double v : pool) {  // ascending
    if (v >= 0.0) {
      res.mu1 = v;
      break;
    }
    res.lambda1 = -v;  // ends at the negative value closest to 0
  }
  return res;
}

double phase_intertwine_residual(const GaugePotential& gauge, const SpinorField& field,
                                 std::span<const Vec3> points, DerivMethod method) {
  const SpinorField wrapped = phase_wrapped(gauge, field);
  double worst = 0.0;
  for (const Vec3& x : points) {
    const SpinorJet lhs = angular_momentum(wrapped, x, &gauge, method);
    const SpinorJet free_l = angular_momentum(field, x, nullptr, method);
    const Complex phase = std::exp(kImag * gauge.eta(x));
    double acc = 0.0;
    for (int c = 0; c < 3; ++c) acc += norm2(lhs[c] - phase * free_l[c]);
    worst = std::max(worst, std::sqrt(acc));
  }
  return worst;
}

std::pair<double, double> sphere_norm_bound_check(const SpinorField& field,
                                                  const GaugePotential& gauge,
                                                  const SphereGrid& grid) {
  const SpinorField u = degree0_extension(field);
  std::vector<double> lhs_terms(grid.nodes.size()), rhs_terms(grid.nodes.size());
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const SphereGrid::Node& node = grid.nodes[i];
    const Spinor so = spin_orbit(u, &gauge, node.omega).value;
    lhs_terms[i] = node.w * norm2(so);
    rhs_terms[i] = node.w * norm2(u.eval(node.omega));
  }
  return {std::sqrt(pairwise_sum(lhs_terms)), std::sqrt(pairwise_sum(rhs_terms))};
}

}  // namespace spinh
