#pragma once

#include <vector>

#include "spinor_hardy/pauli.hpp"

namespace spinh {

//! Flat index of the (l, m) harmonic inside a degree-ordered table.
inline int sph_index(int l, int m) { return l * l + l + m; }

//! All spherical harmonics Y_l^m for l <= l_max at a point on the unit
//! sphere, packed by sph_index. Orthonormal convention with the
//! Condon-Shortley phase, i.e. Y_1^1 = -sqrt(3/8pi) sin(theta) e^{i phi}.
std::vector<Complex> sph_harm_table(int l_max, const Vec3& omega);

Complex sph_harm(int l, int m, const Vec3& omega);

}  // namespace spinh
