#include "oclab/luxemburg.hpp"

#include "oclab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace oclab {

double modular(const std::vector<WeightedValue>& samples, const OrliczFunction& psi, double c) {
  double sum = 0.0;
  for (const auto& s : samples) {
    if (s.value > 0.0 && s.weight > 0.0) sum += s.weight * psi(s.value / c);
  }
  return sum;
}

double luxemburg_norm(const std::vector<WeightedValue>& samples, const OrliczFunction& psi) {
  if (samples.empty()) throw InvalidArgument("luxemburg_norm: no samples");
  double total = 0.0, vmax = 0.0;
  for (const auto& s : samples) {
    if (!(s.weight >= 0.0) || !std::isfinite(s.weight)) {
      throw InvalidArgument("luxemburg_norm: weights must be finite and nonnegative");
    }
    if (!(s.value >= 0.0) || !std::isfinite(s.value)) {
      throw InvalidArgument("luxemburg_norm: values must be finite and nonnegative");
    }
    total += s.weight;
    if (s.weight > 0.0) vmax = std::max(vmax, s.value);
  }
  if (!(total > 0.0)) throw InvalidArgument("luxemburg_norm: all weights are zero");
  if (vmax == 0.0) return 0.0;

  const double c0 = vmax / psi.inverse(1.0 / total);
  double lo = c0 * 1e-3, hi = c0 * 1e3;
  for (int i = 0; i < 200 && modular(samples, psi, lo) <= 1.0; ++i) lo *= 1e-3;
  for (int i = 0; i < 200 && modular(samples, psi, hi) > 1.0; ++i) hi *= 1e3;
  if (modular(samples, psi, lo) <= 1.0 || modular(samples, psi, hi) > 1.0) {
    throw NumericError("luxemburg_norm: could not bracket the norm");
  }

  for (int i = 0; i < 400 && hi / lo - 1.0 > 1e-15; ++i) {
    double mid = std::sqrt(lo) * std::sqrt(hi);
    if (mid <= lo || mid >= hi) break;
    if (modular(samples, psi, mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double flo = std::abs(modular(samples, psi, lo) - 1.0);
  double fhi = std::abs(modular(samples, psi, hi) - 1.0);
  return flo < fhi ? lo : hi;
}

}  // namespace oclab
