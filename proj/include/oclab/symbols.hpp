#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace oclab {

using Complex = std::complex<double>;

struct IdentitySymbol {};

struct ConstantSymbol {
  Complex c;
};

struct PowerSymbol {
  int k;  // z^k, k >= 1
};

// λ Π (z - a)/(1 - conj(a) z); repeated zeros carry multiplicity.
struct BlaschkeSymbol {
  std::vector<Complex> zeros;
  Complex lambda{1.0, 0.0};
};

// φ = 1/(1 - (2/π) log f) - 1 with f the Riemann map of the disk onto the
// right half-disk normalized by f(-1) = 0, f(1) = 1, f(i) = i.
class CuspSymbol {
 public:
  static CuspSymbol build();

  Complex f(Complex z) const;
  Complex f_derivative(Complex z) const;
  // f⁻¹ for u in the open right half-disk.
  Complex f_inverse(Complex u) const;
  Complex f_inverse_derivative(Complex u) const;

  Complex eval(Complex z) const;
  Complex derivative(Complex z) const;
  Complex boundary_value(double theta) const;
  // Chain value φ₂ = 1 - (2/π) log f.
  Complex phi2(Complex z) const;
  // The unique preimage of w, if w lies in the image. z + 1 is also
  // returned accurately since preimages crowd toward the cusp at -1.
  bool invert(Complex w, Complex* z, Complex* z_plus_one = nullptr) const;

  // τ(z) = (a z + b)/(c z + d), the normalizing disk automorphism.
  const std::array<Complex, 4>& tau() const { return tau_; }

 private:
  std::array<Complex, 4> tau_{};
};

// Any analytic self-map given by callables; boundary values only when the
// caller allows the radial limit at r = 0.999999.
struct CustomSymbol {
  std::string name;
  std::function<Complex(Complex)> f;
  std::function<Complex(Complex)> df;
  bool radial_boundary = false;
};

class AnalyticSymbol {
 public:
  using Variant =
      std::variant<IdentitySymbol, ConstantSymbol, PowerSymbol, BlaschkeSymbol, CuspSymbol, CustomSymbol>;

  static AnalyticSymbol identity() { return AnalyticSymbol(IdentitySymbol{}); }
  static AnalyticSymbol constant(Complex c);
  static AnalyticSymbol power(int k);
  static AnalyticSymbol blaschke(std::vector<Complex> zeros, Complex lambda = {1.0, 0.0});
  static AnalyticSymbol cusp() { return AnalyticSymbol(CuspSymbol::build()); }
  static AnalyticSymbol custom(CustomSymbol s) { return AnalyticSymbol(std::move(s)); }

  Complex eval(Complex z) const;
  Complex derivative(Complex z) const;
  bool has_boundary() const;
  // Throws InvalidArgument when no boundary extension is available.
  Complex boundary_value(double theta) const;

  const Variant& variant() const { return v_; }
  std::string spec() const;

 private:
  explicit AnalyticSymbol(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// identity | constant:re,im | power:k | blaschke:re,im;re,im[@theta] | cusp
AnalyticSymbol parse_symbol(std::string_view spec);

// Radius used for radial boundary limits of custom symbols.
inline constexpr double kRadialBoundaryRadius = 0.999999;

}  // namespace oclab
