#pragma once

#include "oclab/errors.hpp"

#include <cmath>

namespace oclab {

namespace detail {
template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  double diff = left + right - whole;
  if (std::abs(diff) <= 15 * tol) return left + right + diff / 15;
  if (depth <= 0) throw NumericError("adaptive Simpson: tolerance not reached");
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}
}  // namespace detail

// Adaptive Simpson with absolute tolerance `tol`; throws NumericError when
// the recursion depth runs out.
template <class F>
double adaptive_simpson(F f, double a, double b, double tol, int max_depth = 50) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace oclab
