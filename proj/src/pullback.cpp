#include "oclab/pullback.hpp"

#include "oclab/errors.hpp"
#include "oclab/probe.hpp"
#include "oclab/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace oclab {

namespace {

// Search grid for the example sequences: x_k = 2^{k/kSteps}.
constexpr int kSteps = 64;
double grid_point(long k) { return std::exp2(double(k) / kSteps); }

// Largest log Ψ we allow, so masses and 1 - Ψ^{-1/2} stay meaningful in doubles.
constexpr double kMaxLogPsi = 600.0;

double log_psi(const OrliczFunction& psi, double x) {
  try {
    LogReal v = psi.eval(LogReal(x));
    return v.is_zero() ? -std::numeric_limits<double>::infinity() : v.log_double();
  } catch (const OverflowError&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

DiskMeasure pullback_area(const AnalyticSymbol& phi, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 10000) throw InvalidArgument("pullback_area: need at least 1e4 samples");
  std::vector<Complex> pts(n_samples);
  for_each_disk_sample(n_samples, seed, [&](std::size_t i, Complex z) { pts[i] = phi.eval(z); });
  return DiskMeasure::sampled(std::move(pts), 1.0, "area:" + phi.spec(), seed, true);
}

DiskMeasure pullback_boundary(const AnalyticSymbol& phi, std::size_t n_theta) {
  if (!phi.has_boundary()) throw InvalidArgument("pullback_boundary: symbol has no boundary extension");
  if (n_theta < 8) throw InvalidArgument("pullback_boundary: need at least 8 angles");
  std::vector<Complex> pts(n_theta);
  for (std::size_t i = 0; i < n_theta; ++i) {
    double theta = 2 * std::numbers::pi * (double(i) + 0.5) / double(n_theta);
    Complex w = phi.boundary_value(theta);
    // boundary values may overshoot the circle by rounding
    if (std::abs(w) > 1.0) w /= std::abs(w);
    pts[i] = w;
  }
  return DiskMeasure::sampled(std::move(pts), 1.0, "boundary:" + phi.spec(), 0, false);
}

Example21 example_measure_21(const OrliczFunction& psi, int n_terms) {
  if (n_terms < 1 || n_terms > 30) throw InvalidArgument("example_measure_21: n_terms must be in [1, 30]");
  if (condition_probe(psi, default_probe(ProbeCondition::Delta2)).verdict == ProbeVerdict::HoldsOnGrid) {
    throw InvalidArgument("example_measure_21: psi satisfies Delta2 on the probe grid");
  }
  Example21 ex;
  std::vector<double> log_psi2a;
  long k = 0;
  for (int n = 1; n <= n_terms; ++n) {
    const double need = std::log(2.0 * n) + n * std::log(2.0);  // ×2 margin on n 2^n
    bool found = false;
    for (; k < 200 * kSteps; ++k) {
      double a = grid_point(k);
      double l2a = log_psi(psi, 2 * a), la = log_psi(psi, a);
      if (l2a > kMaxLogPsi) break;
      if (!(la > -1e300) || l2a - la < need) continue;
      // Ψ(2a_n)/n strictly increasing
      if (!log_psi2a.empty() && !(l2a - std::log(double(n)) > log_psi2a.back() - std::log(double(n - 1)))) continue;
      ex.a.push_back(a);
      log_psi2a.push_back(l2a);
      found = true;
      ++k;
      break;
    }
    if (!found) {
      throw NumericError("example_measure_21: no admissible a_" + std::to_string(n) +
                         " within the double range");
    }
  }
  std::vector<Atom> atoms;
  for (int i = 0; i < n_terms; ++i) {
    int n = i + 1;
    double p = std::exp(log_psi2a[i]);
    ex.psi2a.push_back(p);
    ex.x.push_back(1.0 - 1.0 / std::sqrt(p));
    double mass = n / p;
    if (n < n_terms) mass -= (n + 1) / std::exp(log_psi2a[i + 1]);
    if (!(mass > 0.0)) throw NumericError("example_measure_21: nonpositive atom mass");
    atoms.push_back({ex.x.back(), mass});
  }
  ex.mu = DiskMeasure::discrete(std::move(atoms));
  return ex;
}

Example22 example_measure_22(const OrliczFunction& psi, int n_terms) {
  if (n_terms < 1 || n_terms > 30) throw InvalidArgument("example_measure_22: n_terms must be in [1, 30]");
  // log Ψ tabulated on the grid; 2x and 2^n y are grid shifts by kSteps and n kSteps.
  std::vector<double> lp;
  for (long k = 0;; ++k) {
    double v = log_psi(psi, grid_point(k));
    if (v > kMaxLogPsi || k > 400 * kSteps) break;
    lp.push_back(v);
  }
  const long size = static_cast<long>(lp.size());
  Example22 ex;
  long start = 0;
  for (int n = 1; n <= n_terms; ++n) {
    const long shift = long(n) * kSteps;
    // suffix minima of log Ψ(2^n y)/Ψ(y) over admissible y
    std::vector<double> suffix(std::max<long>(size - shift, 0) + 1, std::numeric_limits<double>::infinity());
    for (long ky = size - shift - 1; ky >= 0; --ky) suffix[ky] = std::min(suffix[ky + 1], lp[ky + shift] - lp[ky]);
    bool found = false;
    for (long kx = start; kx + kSteps < size && kx < size - shift; ++kx) {
      if (!(lp[kx] > 0.0)) continue;  // Ψ(x_n) > 1
      double target = lp[kx + kSteps] - lp[kx] - std::log(2.0);
      if (!(suffix[kx] <= target)) continue;
      long ky = kx;
      while (!(lp[ky + shift] - lp[ky] <= target)) ++ky;
      ex.x.push_back(grid_point(kx));
      ex.y.push_back(grid_point(ky));
      start = ky + 1;
      found = true;
      break;
    }
    if (!found) {
      throw NumericError("example_measure_22: no admissible (x_" + std::to_string(n) + ", y_" +
                         std::to_string(n) + ") on the search grid; psi may satisfy Nabla0");
    }
  }
  std::vector<Atom> atoms;
  for (int i = 0; i < n_terms; ++i) {
    int n = i + 1;
    double lpy = log_psi(psi, ex.y[i]);
    double lp2ny = log_psi(psi, std::ldexp(ex.y[i], n));
    ex.r.push_back(1.0 - std::exp(-0.5 * lpy));
    double mass = std::exp(-lp2ny);
    if (!(mass > 0.0) || !(ex.r.back() < 1.0)) throw NumericError("example_measure_22: atom outside double range");
    atoms.push_back({ex.r.back(), mass});
  }
  ex.mu = DiskMeasure::discrete(std::move(atoms));
  return ex;
}

}  // namespace oclab
