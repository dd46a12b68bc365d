#pragma once

#include <vector>

#include "spinor_hardy/pauli.hpp"

namespace spinh {

//! Sparse polynomial in (x, y, z) with coefficients in T. Small fixed
//! term lists; evaluation cost is what matters, so powers are built by
//! repeated multiplication.
template <typename T>
struct Poly3 {
  struct Term {
    int i, j, k;  // exponents of x, y, z
    T c;
  };
  std::vector<Term> terms;

  static double ipow(double base, int e) {
    double p = 1.0;
    for (int n = 0; n < e; ++n) p *= base;
    return p;
  }

  T eval(const Vec3& v) const {
    T acc{};
    for (const Term& t : terms) acc += t.c * ipow(v.x, t.i) * ipow(v.y, t.j) * ipow(v.z, t.k);
    return acc;
  }

  //! Partial derivative along axis 0, 1 or 2.
  Poly3 derivative(int axis) const {
    Poly3 out;
    for (const Term& t : terms) {
      const int e = axis == 0 ? t.i : axis == 1 ? t.j : t.k;
      if (e == 0) continue;
      Term d = t;
      d.c = double(e) * t.c;
      (axis == 0 ? d.i : axis == 1 ? d.j : d.k) -= 1;
      out.terms.push_back(d);
    }
    return out;
  }

  Poly3& add(int i, int j, int k, T c) {
    terms.push_back({i, j, k, c});
    return *this;
  }
};

using RPoly = Poly3<double>;
using CPoly = Poly3<Complex>;

}  // namespace spinh
