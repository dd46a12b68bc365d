#include "spinor_hardy/sphharm.hpp"

#include <cmath>
#include <stdexcept>

namespace spinh {

// Normalized associated Legendre values P~_l^m(cos theta) carry the full
// normalization sqrt((2l+1)/(4pi) (l-m)!/(l+m)!) and the Condon-Shortley
// sign. Built by the standard three-term scheme: diagonal seed, first
// off-diagonal step, then upward recurrence in l at fixed m. All factors
// stay O(1), so the recurrence is stable to high degree.
std::vector<Complex> sph_harm_table(int l_max, const Vec3& omega) {
  if (l_max < 0) throw std::invalid_argument("sph_harm_table: negative degree");
  const double rn = norm(omega);
  if (!(rn > 0.0)) throw std::invalid_argument("sph_harm_table: zero direction");
  const double c = omega.z / rn;
  const double sxy = std::hypot(omega.x, omega.y);
  const double s = sxy / rn;
  // Unit azimuthal phase; arbitrary on the poles where s = 0 multiplies it away.
  const Complex eiphi = sxy > 0.0 ? Complex(omega.x / sxy, omega.y / sxy) : Complex(1.0, 0.0);

  const int n = (l_max + 1) * (l_max + 1);
  std::vector<Complex> table(n);
  std::vector<double> pmm(l_max + 1);       // P~_m^m
  std::vector<Complex> eimphi(l_max + 1);   // e^{i m phi}
  pmm[0] = 1.0 / std::sqrt(4.0 * M_PI);
  eimphi[0] = 1.0;
  for (int m = 1; m <= l_max; ++m) {
    pmm[m] = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * pmm[m - 1];
    eimphi[m] = eimphi[m - 1] * eiphi;
  }

  for (int m = 0; m <= l_max; ++m) {
    double p_prev = 0.0, p_curr = pmm[m];
    for (int l = m; l <= l_max; ++l) {
      if (l > m) {
        const double den = double(l) * l - double(m) * m;
        const double num = double(l - 1) * (l - 1) - double(m) * m;
        const double a = std::sqrt((4.0 * l * l - 1.0) / den);
        const double b =
            num > 0.0 ? std::sqrt((2.0 * l + 1.0) / (2.0 * l - 3.0) * num / den) : 0.0;
        const double p_next = a * c * p_curr - b * p_prev;
        p_prev = p_curr;
        p_curr = p_next;
      }
      const Complex y = p_curr * eimphi[m];
      table[sph_index(l, m)] = y;
      if (m > 0) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        table[sph_index(l, -m)] = sign * std::conj(y);
      }
    }
  }
  return table;
}

Complex sph_harm(int l, int m, const Vec3& omega) {
  if (l < 0 || std::abs(m) > l)
    throw std::invalid_argument("sph_harm: order out of range");
  return sph_harm_table(l, omega)[sph_index(l, m)];
}

}  // namespace spinh
