#include "oclab/disk.hpp"

#include "oclab/errors.hpp"

#include <cmath>
#include <numbers>

namespace oclab {

namespace {
constexpr double kPi = std::numbers::pi;
}

bool in_window(Complex z, const CarlesonWindow& w) {
  if (w.kind == WindowKind::S) return std::abs(z - w.xi) < w.h;
  if (std::abs(z) < 1.0 - w.h) return false;
  return std::abs(std::arg(z * std::conj(w.xi))) <= kPi * w.h;
}

double window_area(WindowKind kind, double h) {
  if (!(h > 0.0)) return 0.0;
  if (kind == WindowKind::W) {
    h = std::min(h, 1.0);
    return 2 * h * h - h * h * h;
  }
  if (h >= 2.0) return 1.0;
  // lens between the unit disk and D(ξ, h), distance 1 between centers
  double lens = h * h * std::acos(h / 2) + std::acos(1 - h * h / 2) - 0.5 * h * std::sqrt(4 - h * h);
  return lens / kPi;
}

double window_arc(WindowKind kind, double h) {
  if (!(h > 0.0)) return 0.0;
  if (kind == WindowKind::W) return std::min(h, 1.0);
  if (h >= 2.0) return 1.0;
  return 2 * std::asin(h / 2) / kPi;
}

HLCell hl_index(Complex z) {
  double r = std::abs(z);
  if (!(r < 1.0)) throw InvalidArgument("hl_index: point outside the open disk");
  if (r < 0.5) return {0, 0, 0};
  int n = static_cast<int>(std::floor(-std::log2(1.0 - r)));
  // fix rounding at the dyadic radii
  while (n > 1 && r < 1.0 - std::ldexp(1.0, -n)) --n;
  while (r >= 1.0 - std::ldexp(1.0, -n - 1)) ++n;
  if (n < 1) n = 1;
  const long cells = 1L << n;
  const double width = 2 * kPi / cells;
  double theta = std::arg(z);
  if (theta < -width / 2) theta += 2 * kPi;
  long j = static_cast<long>(std::floor((theta + width / 2) / width));
  if (j >= cells) j -= cells;
  if (j < 0) j = 0;
  return {cells + j - 1, n, j};
}

HLCell hl_cell(long k) {
  if (k < 0) throw InvalidArgument("hl_cell: negative index");
  if (k == 0) return {0, 0, 0};
  int n = 0;
  while ((1L << (n + 1)) - 1 <= k) ++n;
  return {k, n, k - (1L << n) + 1};
}

double hl_area(long k) {
  HLCell c = hl_cell(k);
  if (c.n == 0) return 0.25;
  double r_in = 1 - std::ldexp(1.0, -c.n), r_out = 1 - std::ldexp(1.0, -c.n - 1);
  return std::ldexp(r_out * r_out - r_in * r_in, -c.n);
}

PolarBox hl_box(long k) {
  HLCell c = hl_cell(k);
  if (c.n == 0) return {0.0, 0.5, -kPi, kPi};
  double width = 2 * kPi / double(1L << c.n);
  return {1 - std::ldexp(1.0, -c.n), 1 - std::ldexp(1.0, -c.n - 1), (c.j - 0.5) * width,
          (c.j + 0.5) * width};
}

}  // namespace oclab
