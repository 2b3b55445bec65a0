#pragma once

#include <complex>

namespace oclab {

using Complex = std::complex<double>;

enum class WindowKind {
  W,  // {|z| >= 1-h, |arg(z conj ξ)| <= πh}
  S,  // {|z - ξ| < h}
};

struct CarlesonWindow {
  Complex xi{1.0, 0.0};
  double h = 0.1;
  WindowKind kind = WindowKind::W;

  static CarlesonWindow at_angle(double theta, double h, WindowKind kind = WindowKind::W) {
    return {std::polar(1.0, theta), h, kind};
  }
};

// Accepts points of the closed disk so boundary atoms can be tested.
bool in_window(Complex z, const CarlesonWindow& w);

// Exact normalized area (A) and normalized arc length (m) of windows.
double window_area(WindowKind kind, double h);
double window_arc(WindowKind kind, double h);

// Hastings–Luecking cell Δ_k: generation n, angular index j, k = 2^n + j - 1;
// Δ_0 is the disk |z| < 1/2.
struct HLCell {
  long k = 0;
  int n = 0;
  long j = 0;
};

struct PolarBox {
  double r_in, r_out;         // r_in <= |z| < r_out
  double theta_lo, theta_hi;  // half-open angular range, theta_lo may be negative
};

HLCell hl_index(Complex z);
HLCell hl_cell(long k);
double hl_area(long k);
PolarBox hl_box(long k);  // for k = 0 the box is the full disk of radius 1/2

}  // namespace oclab
