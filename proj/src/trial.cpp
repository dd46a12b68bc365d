#include "spinor_hardy/trial.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace spinh {

namespace {

//! Shared state for an envelope-times-polynomial field: the value
//! polynomials and their precomputed partials.
struct GaussPoly {
  double a;
  CPoly up, down;
  std::array<CPoly, 3> dup, ddown;
};

}  // namespace

SpinorField gaussian_poly_field(double a, CPoly up, CPoly down, std::string tag) {
  if (!(a > 0.0)) throw std::invalid_argument("gaussian_poly_field: need a > 0");
  auto shared = std::make_shared<GaussPoly>();
  shared->a = a;
  shared->up = std::move(up);
  shared->down = std::move(down);
  for (int j = 0; j < 3; ++j) {
    shared->dup[j] = shared->up.derivative(j);
    shared->ddown[j] = shared->down.derivative(j);
  }

  SpinorField field;
  field.tag = std::move(tag);
  field.eval = [shared](const Vec3& x) -> Spinor {
    const double e = std::exp(-shared->a * dot(x, x));
    return {e * shared->up.eval(x), e * shared->down.eval(x)};
  };
  field.jacobian = [shared](const Vec3& x) -> SpinorJet {
    const double e = std::exp(-shared->a * dot(x, x));
    const Complex u = shared->up.eval(x), d = shared->down.eval(x);
    SpinorJet jet;
    const double c[3] = {x.x, x.y, x.z};
    for (int j = 0; j < 3; ++j) {
      const double w = 2.0 * shared->a * c[j];
      jet[j] = {e * (shared->dup[j].eval(x) - w * u), e * (shared->ddown[j].eval(x) - w * d)};
    }
    return jet;
  };
  // Envelope times a quadratic is below 1e-16 of its peak well before this.
  field.support_radius = std::sqrt(45.0 / a);
  return field;
}

SpinorField gaussian_radial(double a, Complex up, Complex down) {
  CPoly pu, pd;
  pu.add(0, 0, 0, up);
  pd.add(0, 0, 0, down);
  return gaussian_poly_field(a, pu, pd, "gaussian_radial");
}

namespace {

//! Solid harmonics r^l Y_l^m as complex polynomials, l <= 2.
CPoly solid_harmonic(int l, int m) {
  const double pi = M_PI;
  CPoly p;
  if (l == 0 && m == 0) {
    p.add(0, 0, 0, 0.5 / std::sqrt(pi));
  } else if (l == 1) {
    const double c1 = std::sqrt(3.0 / (4.0 * pi));
    const double c2 = std::sqrt(3.0 / (8.0 * pi));
    if (m == 0) p.add(0, 0, 1, c1);
    else if (m == 1) { p.add(1, 0, 0, -c2); p.add(0, 1, 0, -c2 * kImag); }
    else if (m == -1) { p.add(1, 0, 0, c2); p.add(0, 1, 0, -c2 * kImag); }
    else throw std::invalid_argument("solid_harmonic: |m| > l");
  } else if (l == 2) {
    const double c0 = std::sqrt(5.0 / (16.0 * pi));
    const double c1 = std::sqrt(15.0 / (8.0 * pi));
    const double c2 = std::sqrt(15.0 / (32.0 * pi));
    switch (m) {
      case 0:
        p.add(0, 0, 2, 2.0 * c0).add(2, 0, 0, -c0).add(0, 2, 0, -c0);
        break;
      case 1:
        p.add(1, 0, 1, -c1).add(0, 1, 1, -c1 * kImag);
        break;
      case -1:
        p.add(1, 0, 1, c1).add(0, 1, 1, -c1 * kImag);
        break;
      case 2:
        // (x + iy)^2 = x^2 - y^2 + 2ixy
        p.add(2, 0, 0, c2).add(0, 2, 0, -c2).add(1, 1, 0, 2.0 * c2 * kImag);
        break;
      case -2:
        p.add(2, 0, 0, c2).add(0, 2, 0, -c2).add(1, 1, 0, -2.0 * c2 * kImag);
        break;
      default:
        throw std::invalid_argument("solid_harmonic: |m| > l");
    }
  } else {
    throw std::invalid_argument("solid_harmonic: only l <= 2 is tabulated");
  }
  return p;
}

}  // namespace

SpinorField gaussian_times_basis(double a, int l, int m, int s) {
  if (s != 1 && s != 2)
    throw std::invalid_argument("gaussian_times_basis: spin slot must be 1 or 2");
  const CPoly p = solid_harmonic(l, m);
  CPoly zero;
  SpinorField field = s == 1 ? gaussian_poly_field(a, p, zero, "")
                             : gaussian_poly_field(a, zero, p, "");
  field.tag = "gaussian_basis(l=" + std::to_string(l) + ",m=" + std::to_string(m) +
              ",s=" + std::to_string(s) + ")";
  return field;
}

SpinorField random_gaussian_poly(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> width(0.6, 1.4);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const double a = width(rng);
  auto rand_poly = [&] {
    CPoly p;
    static constexpr int kMono[10][3] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                                         {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0},
                                         {0, 1, 1}, {1, 0, 1}};
    for (const auto& m : kMono) {
      const double re = coef(rng), im = coef(rng);
      p.add(m[0], m[1], m[2], Complex(re, im));
    }
    return p;
  };
  const CPoly up = rand_poly();
  const CPoly down = rand_poly();
  return gaussian_poly_field(a, up, down, "random_gaussian_poly");
}

SpinorField phase_wrapped(const GaugePotential& gauge, SpinorField base) {
  auto inner = std::make_shared<SpinorField>(std::move(base));
  auto g = std::make_shared<GaugePotential>(gauge);

  SpinorField field;
  field.tag = "phase_wrapped(" + inner->tag + ")";
  field.support_radius = inner->support_radius;
  field.eval = [inner, g](const Vec3& x) -> Spinor {
    return std::exp(kImag * g->eta(x)) * inner->eval(x);
  };
  if (inner->jacobian) {
    field.jacobian = [inner, g](const Vec3& x) -> SpinorJet {
      const Complex phase = std::exp(kImag * g->eta(x));
      const Vec3 de = g->grad_eta(x);
      const Spinor phi = inner->eval(x);
      const SpinorJet jet = inner->jacobian(x);
      // d_j (e^{i eta} phi) = e^{i eta} (i (d_j eta) phi + d_j phi)
      const double d[3] = {de.x, de.y, de.z};
      SpinorJet out;
      for (int j = 0; j < 3; ++j) out[j] = phase * ((kImag * d[j]) * phi + jet[j]);
      return out;
    };
  }
  return field;
}

SpinorField degree0_extension(SpinorField base) {
  auto inner = std::make_shared<SpinorField>(std::move(base));

  SpinorField field;
  field.tag = "degree0_extension(" + inner->tag + ")";
  field.eval = [inner](const Vec3& x) -> Spinor { return inner->eval(normalized(x)); };
  if (inner->jacobian) {
    field.jacobian = [inner](const Vec3& x) -> SpinorJet {
      const double r = norm(x);
      const Vec3 omega = normalized(x);
      const SpinorJet jet = inner->jacobian(omega);
      // Chain rule through x -> x/|x|: project out the radial direction
      // and scale by 1/r (degree -1 homogeneity of the derivative).
      const Spinor radial = omega.x * jet[0] + omega.y * jet[1] + omega.z * jet[2];
      const double w[3] = {omega.x, omega.y, omega.z};
      SpinorJet out;
      for (int j = 0; j < 3; ++j) out[j] = (1.0 / r) * (jet[j] - w[j] * radial);
      return out;
    };
  }
  return field;
}

namespace {

//! C^2 even smoothing of |t| on [-1, 1]: matches value, slope and
//! curvature of |t| at the edges.
double kink_h(double u) { return 0.375 + 0.75 * u * u - 0.125 * u * u * u * u; }
double kink_dh(double u) { return 1.5 * u - 0.5 * u * u * u; }

//! Quintic smoothstep on [0, 1].
double smoothstep(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
double dsmoothstep(double u) {
  const double s = u * (1.0 - u);
  return 30.0 * s * s;
}

}  // namespace

PiecewisePowerProfile::PiecewisePowerProfile(double epsilon, double smoothing_w,
                                             const GaugePotential& gauge)
    : epsilon_(epsilon), w_(smoothing_w) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("PiecewisePowerProfile: epsilon must lie in (0, 1)");
  if (!(smoothing_w > 0.0) || !(smoothing_w < 0.5))
    throw std::invalid_argument("PiecewisePowerProfile: smoothing width out of range");
  // Support reaches where the profile is ~e^{-4} of its peak, capped so
  // r^3 factors stay within double range; a gauge with a bounded working
  // range pins the support (and the factor-2 margins) inside it.
  const double t_free = std::min(4.0 / epsilon, 220.0);
  if (gauge.is_free()) {
    t_hi_ = t_free;
    t_lo_ = -t_free;
  } else {
    t_hi_ = std::min(t_free, std::log(gauge.range().r_max / 2.0));
    t_lo_ = -std::min(t_free, -std::log(2.0 * gauge.range().r_min));
  }
  if (t_hi_ - ramp_ < w_ || -t_lo_ - ramp_ < w_)
    throw std::invalid_argument(
        "PiecewisePowerProfile: support too narrow for the smoothing windows");
}

double PiecewisePowerProfile::v(double t) const {
  if (t <= t_lo_ || t >= t_hi_) return 0.0;
  const double k = std::abs(t) < w_ ? w_ * kink_h(t / w_) : std::abs(t);
  double chi = 1.0;
  if (t > t_hi_ - ramp_) chi = smoothstep((t_hi_ - t) / ramp_);
  else if (t < t_lo_ + ramp_) chi = smoothstep((t - t_lo_) / ramp_);
  return std::exp(-epsilon_ * k) * chi;
}

double PiecewisePowerProfile::dv(double t) const {
  if (t <= t_lo_ || t >= t_hi_) return 0.0;
  double k, dk;
  if (std::abs(t) < w_) {
    k = w_ * kink_h(t / w_);
    dk = kink_dh(t / w_);
  } else {
    k = std::abs(t);
    dk = t > 0.0 ? 1.0 : -1.0;
  }
  double chi = 1.0, dchi = 0.0;
  if (t > t_hi_ - ramp_) {
    chi = smoothstep((t_hi_ - t) / ramp_);
    dchi = -dsmoothstep((t_hi_ - t) / ramp_) / ramp_;
  } else if (t < t_lo_ + ramp_) {
    chi = smoothstep((t - t_lo_) / ramp_);
    dchi = dsmoothstep((t - t_lo_) / ramp_) / ramp_;
  }
  const double env = std::exp(-epsilon_ * k);
  return env * (-epsilon_ * dk * chi + dchi);
}

double PiecewisePowerProfile::f(double r) const {
  if (!(r > 0.0)) return 0.0;
  return v(std::log(r)) / r;
}

double PiecewisePowerProfile::df(double r) const {
  if (!(r > 0.0)) return 0.0;
  const double t = std::log(r);
  return (dv(t) - v(t)) / (r * r);
}

SpinorField PiecewisePowerProfile::field() const {
  auto shape = std::make_shared<PiecewisePowerProfile>(*this);
  SpinorField out;
  out.tag = "piecewise_power(eps=" + std::to_string(epsilon_) + ")";
  out.support_radius = std::exp(t_hi_);
  out.eval = [shape](const Vec3& x) -> Spinor {
    return {shape->f(norm(x)), 0.0};
  };
  out.jacobian = [shape](const Vec3& x) -> SpinorJet {
    const double r = norm(x);
    if (!(r > 0.0)) return {};
    const double d = shape->df(r);
    const Vec3 omega = normalized(x);
    return {Spinor{d * omega.x, 0.0}, Spinor{d * omega.y, 0.0}, Spinor{d * omega.z, 0.0}};
  };
  return out;
}

std::vector<double> PiecewisePowerProfile::radial_breakpoints() const {
  const std::vector<double> ts = {t_lo_, t_lo_ + ramp_, -w_, w_, t_hi_ - ramp_, t_hi_};
  std::vector<double> rs;
  rs.push_back(0.5 * std::exp(t_lo_));
  for (double t : ts) rs.push_back(std::exp(t));
  rs.push_back(2.0 * std::exp(t_hi_));
  return rs;
}

}  // namespace spinh
