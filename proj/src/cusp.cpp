#include "oclab/errors.hpp"
#include "oclab/symbols.hpp"

#include <cmath>
#include <numbers>

namespace oclab {

namespace {

using Mat = std::array<Complex, 4>;  // (a, b, c, d) for (a z + b)/(c z + d)

const Complex I{0.0, 1.0};

Complex mobius(const Mat& m, Complex z) { return (m[0] * z + m[1]) / (m[2] * z + m[3]); }
Complex det(const Mat& m) { return m[0] * m[3] - m[1] * m[2]; }
Mat inverse(const Mat& m) { return {m[3], -m[1], -m[2], m[0]}; }
Mat compose(const Mat& p, const Mat& q) {  // p ∘ q
  return {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
          p[2] * q[1] + p[3] * q[3]};
}

// Sends (z1, z2, z3) to (0, ∞, 1).
Mat to_standard(Complex z1, Complex z2, Complex z3) {
  return {z3 - z2, -z1 * (z3 - z2), z3 - z1, -z2 * (z3 - z1)};
}

// g⁻¹ for g: disk → right half-disk, g(ζ) = i(1 - √s)/(1 + √s), s = i(1+ζ)/(1-ζ).
Complex g_inverse(Complex u) {
  Complex den = 1.0 - I * u;
  if (den == 0.0) return 1.0;
  Complex q = (1.0 + I * u) / den;
  Complex s = q * q;
  return (s - I) / (s + I);
}

// g(τ(z)) with the cancellation near z = -1 removed: ζ + i and 1 - s are
// formed from z + 1 directly.
template <class T>
std::complex<T> f_chain(const Mat& tau, Complex z_in, Complex z_plus_one) {
  using C = std::complex<T>;
  const C i{0, 1};
  C a(tau[0]), b(tau[1]), c(tau[2]), d(tau[3]);
  C z(z_in), e(z_plus_one);
  C zeta = (a * z + b) / (c * z + d);
  C one_minus_zeta = C(1) - zeta;
  if (std::abs(one_minus_zeta) == T(0)) return -i;
  // ζ - τ(-1) = det (z + 1)/((c z + d)(d - c)); τ(-1) = -i
  C zeta_plus_i = (a * d - b * c) * e / ((c * z + d) * (d - c));
  C one_minus_s = -(C(1) + i) * zeta_plus_i / one_minus_zeta;
  C s = C(1) - one_minus_s;
  if (s.imag() < T(0)) s = C(s.real(), T(0));  // boundary rounding; s lies in the closed upper half-plane
  C q = std::sqrt(s);
  return i * one_minus_s / ((C(1) + q) * (C(1) + q));
}

}  // namespace

CuspSymbol CuspSymbol::build() {
  // τ sends -1, 1, i to g⁻¹(0), g⁻¹(1), g⁻¹(i).
  Complex t1 = g_inverse(0.0), t2 = g_inverse(1.0), t3 = g_inverse(I);
  Mat m = compose(inverse(to_standard(t1, t2, t3)), to_standard(-1.0, 1.0, I));
  Complex sd = std::sqrt(det(m));
  if (std::abs(sd) == 0.0) throw ConstructionError("cusp: degenerate normalization map");
  for (auto& x : m) x /= sd;

  CuspSymbol s;
  s.tau_ = m;
  // τ must be an automorphism of the disk.
  double worst = 0;
  for (int k = 0; k < 64; ++k) {
    Complex z = std::polar(1.0, 2 * std::numbers::pi * k / 64);
    worst = std::max(worst, std::abs(std::abs(mobius(m, z)) - 1.0));
  }
  if (worst > 1e-12 || std::abs(mobius(m, 0.0)) >= 1.0) {
    throw ConstructionError("cusp: normalization map does not preserve the disk (defect " +
                            std::to_string(worst) + ")");
  }
  const std::array<std::pair<Complex, Complex>, 4> marks = {
      {{-1.0, 0.0}, {1.0, 1.0}, {I, I}, {-I, -I}}};
  for (const auto& [z, want] : marks) {
    if (std::abs(s.f(z) - want) > 1e-12) {
      throw ConstructionError("cusp: boundary normalization failed at z = (" +
                              std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")");
    }
  }
  return s;
}

Complex CuspSymbol::f(Complex z) const {
  Complex e = z + 1.0;
  if (std::abs(e) < 1e-6) {
    auto r = f_chain<long double>(tau_, z, e);
    return {double(r.real()), double(r.imag())};
  }
  return f_chain<double>(tau_, z, e);
}

Complex CuspSymbol::f_derivative(Complex z) const {
  Complex zeta = mobius(tau_, z);
  Complex s = I * (1.0 + zeta) / (1.0 - zeta);
  Complex q = std::sqrt(s);
  Complex g1 = 2.0 / ((1.0 + q) * (1.0 + q) * q * (1.0 - zeta) * (1.0 - zeta));
  Complex den = tau_[2] * z + tau_[3];
  return g1 * det(tau_) / (den * den);
}

Complex CuspSymbol::f_inverse(Complex u) const { return mobius(inverse(tau_), g_inverse(u)); }

Complex CuspSymbol::f_inverse_derivative(Complex u) const {
  Complex den = 1.0 - I * u;
  Complex q = (1.0 + I * u) / den;
  Complex s = q * q;
  Complex dzeta = -8.0 * q / (den * den * (s + I) * (s + I));
  Complex z = f_inverse(u);
  Complex cz = tau_[2] * z + tau_[3];
  return dzeta * cz * cz / det(tau_);
}

Complex CuspSymbol::phi2(Complex z) const {
  return 1.0 - (2.0 / std::numbers::pi) * std::log(f(z));
}

Complex CuspSymbol::eval(Complex z) const {
  Complex u = f(z);
  if (u == 0.0) return -1.0;
  Complex p2 = 1.0 - (2.0 / std::numbers::pi) * std::log(u);
  return 1.0 / p2 - 1.0;
}

Complex CuspSymbol::derivative(Complex z) const {
  Complex u = f(z);
  Complex p2 = 1.0 - (2.0 / std::numbers::pi) * std::log(u);
  return (2.0 / std::numbers::pi) * (f_derivative(z) / u) / (p2 * p2);
}

Complex CuspSymbol::boundary_value(double theta) const {
  if (std::cos(theta) == -1.0) return -1.0;  // the cusp point, by continuity
  return eval(std::polar(1.0, theta));
}

bool CuspSymbol::invert(Complex w, Complex* z, Complex* z_plus_one) const {
  Complex p3 = w + 1.0;
  if (p3 == 0.0) return false;
  Complex p2 = 1.0 / p3;
  if (!(p2.real() > 1.0) || !(std::abs(p2.imag()) < 1.0)) return false;
  Complex u = std::exp((1.0 - p2) * (std::numbers::pi / 2));
  // z + 1 without cancellation: ζ + i = (1+i)(s-1)/(s+i), s - 1 = (q-1)(q+1), q - 1 = 2iu/(1-iu)
  Complex den = 1.0 - I * u;
  Complex q = (1.0 + I * u) / den;
  Complex s = q * q;
  Complex zeta_plus_i = (1.0 + I) * (2.0 * I * u / den) * (q + 1.0) / (s + I);
  Complex zeta = zeta_plus_i - I;
  Mat inv = inverse(tau_);
  // τ⁻¹(ζ) - τ⁻¹(-i) = det (ζ + i)/((c'ζ + d')(-c' i + d'))
  Complex e = det(tau_) * zeta_plus_i / ((inv[2] * zeta + inv[3]) * (-inv[2] * I + inv[3]));
  *z = e - 1.0;
  if (z_plus_one) *z_plus_one = e;
  return true;
}

}  // namespace oclab
