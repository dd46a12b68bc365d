#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace spinh {

using Complex = std::complex<double>;

inline constexpr Complex kImag{0.0, 1.0};

//! 3-vector over double or Complex. Dot products are bilinear (no
//! conjugation); sesquilinear pairings live on Spinor.
template <typename T>
struct Vec3T {
  T x{}, y{}, z{};

  Vec3T operator+(const Vec3T& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3T operator-(const Vec3T& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3T operator-() const { return {-x, -y, -z}; }
  template <typename S>
  friend Vec3T operator*(S a, const Vec3T& v) {
    return {a * v.x, a * v.y, a * v.z};
  }
};

using Vec3 = Vec3T<double>;
using CVec3 = Vec3T<Complex>;

template <typename T>
inline T dot(const Vec3T<T>& a, const Vec3T<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <typename T>
inline Vec3T<T> cross(const Vec3T<T>& a, const Vec3T<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return {v.x / n, v.y / n, v.z / n};
}

//! Value in C^2; the pointwise value of every spinor field here.
struct Spinor {
  Complex a{}, b{};

  Spinor operator+(const Spinor& o) const { return {a + o.a, b + o.b}; }
  Spinor operator-(const Spinor& o) const { return {a - o.a, b - o.b}; }
  Spinor operator-() const { return {-a, -b}; }
  friend Spinor operator*(Complex c, const Spinor& s) { return {c * s.a, c * s.b}; }
  friend Spinor operator*(double c, const Spinor& s) { return {c * s.a, c * s.b}; }
};

//! Sesquilinear product, conjugate-linear in the first slot.
inline Complex inner(const Spinor& s, const Spinor& t) {
  return std::conj(s.a) * t.a + std::conj(s.b) * t.b;
}

inline double norm2(const Spinor& s) { return std::norm(s.a) + std::norm(s.b); }
inline double norm(const Spinor& s) { return std::sqrt(norm2(s)); }

//! The three partial derivatives (or operator components) of a spinor field.
using SpinorJet = std::array<Spinor, 3>;

//! Dense complex 2x2 matrix; carrier of the sigma algebra.
struct Mat2 {
  Complex m00{}, m01{}, m10{}, m11{};

  Mat2 operator+(const Mat2& o) const {
    return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
  }
  Mat2 operator-(const Mat2& o) const {
    return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
  }
  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  friend Mat2 operator*(Complex c, const Mat2& o) {
    return {c * o.m00, c * o.m01, c * o.m10, c * o.m11};
  }
  Spinor operator*(const Spinor& s) const {
    return {m00 * s.a + m01 * s.b, m10 * s.a + m11 * s.b};
  }
  Mat2 adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }
  double max_abs() const {
    return std::max(std::max(std::abs(m00), std::abs(m01)),
                    std::max(std::abs(m10), std::abs(m11)));
  }
};

inline Mat2 identity2() { return {1.0, 0.0, 0.0, 1.0}; }

//! The Pauli matrix sigma_j, j in {1,2,3}.
inline Mat2 pauli(int j) {
  switch (j) {
    case 1: return {0.0, 1.0, 1.0, 0.0};
    case 2: return {0.0, -kImag, kImag, 0.0};
    case 3: return {1.0, 0.0, 0.0, -1.0};
    default: throw std::out_of_range("pauli: index must be 1, 2 or 3");
  }
}

//! sigma.F = F1 sigma_1 + F2 sigma_2 + F3 sigma_3 for a complex 3-vector F.
inline Mat2 sigma_dot(const CVec3& f) {
  return {f.z, f.x - kImag * f.y, f.x + kImag * f.y, -f.z};
}

inline Mat2 sigma_dot(const Vec3& f) {
  return sigma_dot(CVec3{Complex(f.x), Complex(f.y), Complex(f.z)});
}

//! (sigma.F) s without forming the matrix; F real.
inline Spinor sigma_dot_apply(const Vec3& f, const Spinor& s) {
  return {f.z * s.a + Complex(f.x, -f.y) * s.b,
          Complex(f.x, f.y) * s.a - f.z * s.b};
}

//! sigma_1 j0 + sigma_2 j1 + sigma_3 j2 applied to a jet of spinors.
inline Spinor sigma_contract(const SpinorJet& j) {
  return {j[2].a + j[0].b - kImag * j[1].b,
          j[0].a + kImag * j[1].a - j[2].b};
}

//! Max-norm residual of (sigma.F)(sigma.G) - (F.G) I - i sigma.(F^G), real F, G.
inline double sigma_product_check(const Vec3& f, const Vec3& g) {
  const Mat2 lhs = sigma_dot(f) * sigma_dot(g);
  const Mat2 rhs = dot(f, g) * identity2() + kImag * sigma_dot(cross(f, g));
  return (lhs - rhs).max_abs();
}

//! |(sigma.omega) s| for unit omega; equals |s| by the anticommutation rules.
inline double unit_contraction_norm(const Vec3& omega, const Spinor& s) {
  if (std::abs(dot(omega, omega) - 1.0) > 1e-10)
    throw std::invalid_argument("unit_contraction_norm: omega is not a unit vector");
  return norm(sigma_dot_apply(omega, s));
}

}  // namespace spinh
