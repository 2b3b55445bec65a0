#include "oclab/nevanlinna.hpp"

#include "oclab/errors.hpp"
#include "oclab/pullback.hpp"
#include "oclab/quadrature.hpp"

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace oclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2 * std::numbers::pi;

// Circle used for the argument-principle count of generic symbols.
constexpr double kCountRadius = 0.999;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double log_inv(Complex z) { return -std::log(std::abs(z)); }

void set_residual(const AnalyticSymbol& phi, PreimageSet& p) {
  p.residual = 0;
  for (const auto& r : p.roots) p.residual = std::max(p.residual, std::abs(phi.eval(r.z) - p.w));
}

// Winding number of φ - w along |z - c| = rad.
int winding(const AnalyticSymbol& phi, Complex w, Complex c, double rad, int n) {
  double total = 0;
  Complex prev = phi.eval(c + rad) - w;
  for (int i = 1; i <= n; ++i) {
    Complex cur = phi.eval(c + std::polar(rad, kTwoPi * i / n)) - w;
    total += std::arg(cur / prev);
    prev = cur;
  }
  return int(std::lround(total / kTwoPi));
}

std::vector<Complex> poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

PreimageSet blaschke_preimages(const AnalyticSymbol& phi, const BlaschkeSymbol& b, Complex w, double tol) {
  PreimageSet p{w, {}, PreimageMethod::PolynomialRoots};
  // λ Π (z - a) - w Π (1 - conj(a) z), coefficients from low to high degree
  std::vector<Complex> num{b.lambda}, den{1.0};
  for (Complex a : b.zeros) {
    num = poly_mul(num, {-a, 1.0});
    den = poly_mul(den, {1.0, -std::conj(a)});
  }
  Eigen::VectorXcd coeffs(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) coeffs[Eigen::Index(i)] = num[i] - w * den[i];
  Eigen::PolynomialSolver<Complex, Eigen::Dynamic> solver(coeffs);
  std::vector<Complex> raw;
  for (Eigen::Index i = 0; i < solver.roots().size(); ++i) raw.push_back(solver.roots()[i]);

  // a root of multiplicity m is split by rounding to about eps^{1/m}
  const double cluster = std::max(1e-6, std::sqrt(tol));
  std::vector<bool> used(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    Complex sum = raw[i];
    int m = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (!used[j] && std::abs(raw[j] - raw[i]) < cluster) {
        used[j] = true;
        sum += raw[j];
        ++m;
      }
    }
    Complex z = sum / double(m);
    if (m == 1) {
      for (int it = 0; it < 8; ++it) {
        Complex d = phi.derivative(z);
        if (d == 0.0) break;
        Complex step = (phi.eval(z) - w) / d;
        z -= step;
        if (std::abs(step) < 1e-17) break;
      }
    }
    if (std::abs(z) < 1.0) p.roots.push_back({z, m, log_inv(z)});
  }
  set_residual(phi, p);
  return p;
}

PreimageSet grid_preimages(const AnalyticSymbol& phi, Complex w, double tol) {
  PreimageSet p{w, {}, PreimageMethod::GridRefinement};
  constexpr int kRadial = 24, kAngular = 48;
  std::vector<Complex> found;
  for (int i = 0; i < kRadial; ++i) {
    double r = kCountRadius * (i + 0.5) / kRadial;
    for (int k = 0; k < kAngular; ++k) {
      Complex z = std::polar(r, kTwoPi * (k + 0.5 * (i % 2)) / kAngular);
      bool ok = false;
      for (int it = 0; it < 60; ++it) {
        Complex d = phi.derivative(z);
        if (d == 0.0 || !std::isfinite(std::abs(d))) break;
        Complex step = (phi.eval(z) - w) / d;
        z -= step;
        if (!(std::abs(z) < 1.0)) break;
        if (std::abs(step) < 1e-15) {
          ok = true;
          break;
        }
      }
      if (!ok || std::abs(phi.eval(z) - w) > std::max(tol, 1e-10)) continue;
      bool dup = std::any_of(found.begin(), found.end(), [&](Complex f) { return std::abs(f - z) < 1e-8; });
      if (!dup) found.push_back(z);
    }
  }
  for (Complex z : found) {
    double rad = std::min(1e-3, 0.5 * (1.0 - std::abs(z)));
    for (Complex o : found)
      if (o != z) rad = std::min(rad, 0.5 * std::abs(o - z));
    int m = std::max(1, winding(phi, w, z, rad, 256));
    p.roots.push_back({z, m, log_inv(z)});
  }
  int expected = winding(phi, w, 0.0, kCountRadius, 4096);
  int found_inside = 0;
  for (const auto& r : p.roots)
    if (std::abs(r.z) < kCountRadius) found_inside += r.multiplicity;
  p.possible_missed_roots = expected != found_inside;
  set_residual(phi, p);
  return p;
}

void check_target(Complex w) {
  if (!(std::abs(w) < 1.0)) throw InvalidArgument("preimages: target must satisfy |w| < 1");
}

}  // namespace

std::string to_string(PreimageMethod m) {
  switch (m) {
    case PreimageMethod::ClosedForm: return "closed-form";
    case PreimageMethod::PolynomialRoots: return "polynomial-roots";
    case PreimageMethod::ChainInversion: return "chain-inversion";
    case PreimageMethod::GridRefinement: return "grid+refinement";
  }
  return "?";
}

bool is_singular_target(const AnalyticSymbol& phi, Complex w) {
  return std::abs(phi.eval(0.0) - w) <= 1e-14;
}

PreimageSet preimages(const AnalyticSymbol& phi, Complex w, double tol) {
  check_target(w);
  if (!(tol >= 1e-12)) throw InvalidArgument("preimages: tol must be >= 1e-12");
  const bool singular = is_singular_target(phi, w);
  if (singular && std::holds_alternative<ConstantSymbol>(phi.variant())) {
    // every point is a preimage
    PreimageSet p{w, {}, PreimageMethod::ClosedForm};
    p.singular = true;
    return p;
  }
  PreimageSet out = std::visit(
      overloaded{
          [&](const IdentitySymbol&) {
            return PreimageSet{w, {{w, 1, log_inv(w)}}, PreimageMethod::ClosedForm};
          },
          [&](const ConstantSymbol&) { return PreimageSet{w, {}, PreimageMethod::ClosedForm}; },
          [&](const PowerSymbol& s) {
            PreimageSet p{w, {}, PreimageMethod::ClosedForm};
            if (w == 0.0) {
              p.roots.push_back({0.0, s.k, kInf});
              return p;
            }
            double rho = std::pow(std::abs(w), 1.0 / s.k);
            double li = -std::log(std::abs(w)) / s.k;
            for (int j = 0; j < s.k; ++j) {
              p.roots.push_back({std::polar(rho, (std::arg(w) + kTwoPi * j) / s.k), 1, li});
            }
            set_residual(phi, p);
            return p;
          },
          [&](const BlaschkeSymbol& b) { return blaschke_preimages(phi, b, w, tol); },
          [&](const CuspSymbol& c) {
            PreimageSet p{w, {}, PreimageMethod::ChainInversion};
            Complex z, e;
            if (c.invert(w, &z, &e)) {
              // |z|² = 1 - 2 Re e + |e|² with e = z + 1
              double li = -0.5 * std::log1p(std::norm(e) - 2 * e.real());
              p.roots.push_back({z, 1, li});
            }
            set_residual(phi, p);
            return p;
          },
          [&](const CustomSymbol&) { return grid_preimages(phi, w, tol); },
      },
      phi.variant());
  out.singular = singular;
  return out;
}

double n_phi_of(const PreimageSet& p) {
  if (p.singular) return kInf;
  double s = 0;
  for (const auto& r : p.roots) s += r.multiplicity * r.log_inv_abs;
  return s;
}

double n_phi_r_of(const PreimageSet& p, double r) {
  if (!(r > 0 && r <= 1)) throw InvalidArgument("n_phi_r: r must be in (0, 1]");
  if (p.singular) return kInf;
  const double lr = std::log(r);
  double s = 0;
  for (const auto& z : p.roots) {
    double v = lr + z.log_inv_abs;
    if (v > 0) s += z.multiplicity * v;
  }
  return s;
}

double n_phi2_of(const PreimageSet& p) {
  if (p.singular) return kInf;
  double s = 0;
  for (const auto& r : p.roots) s += r.multiplicity * r.log_inv_abs * r.log_inv_abs;
  return s;
}

double n_phi2_integral_of(const PreimageSet& p, Complex phi0) {
  if (p.singular) return kInf;
  if (p.roots.empty()) return 0.0;
  // Schwarz: no preimage inside |z| < |u0|, so N(r, w) vanishes there
  Complex u0 = (phi0 - p.w) / (1.0 - std::conj(phi0) * p.w);
  double lo = std::log(std::abs(u0));
  for (const auto& r : p.roots) lo = std::min(lo, -r.log_inv_abs);
  // integrate in s = log r; N(e^s, w) is piecewise linear with kinks at -log(1/|z|)
  std::vector<double> cuts{lo, 0.0};
  for (const auto& r : p.roots)
    if (-r.log_inv_abs > lo && -r.log_inv_abs < 0) cuts.push_back(-r.log_inv_abs);
  std::sort(cuts.begin(), cuts.end());
  auto integrand = [&](double s) {
    double v = 0;
    for (const auto& r : p.roots) v += r.multiplicity * std::max(0.0, s + r.log_inv_abs);
    return v;
  };
  double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += adaptive_simpson(integrand, cuts[i], cuts[i + 1], 1e-9 / double(cuts.size()));
  }
  return 2 * total;
}

double n_phi(const AnalyticSymbol& phi, Complex w) { return n_phi_of(preimages(phi, w)); }

double n_phi_r(const AnalyticSymbol& phi, double r, Complex w) { return n_phi_r_of(preimages(phi, w), r); }

double n_phi2(const AnalyticSymbol& phi, Complex w, CountingMode mode) {
  PreimageSet p = preimages(phi, w);
  return mode == CountingMode::Direct ? n_phi2_of(p) : n_phi2_integral_of(p, phi.eval(0.0));
}

Nu2Estimate nu2(const AnalyticSymbol& phi, double h, const Nu2Options& opts) {
  if (!(h > 0 && h < 1)) throw InvalidArgument("nu2: h must be in (0, 1)");
  if (opts.radial < 1 || opts.angular < 4) throw InvalidArgument("nu2: grid too small");
  Nu2Estimate best{0.0, Complex(1 - h, 0.0)};
  if (std::abs(phi.eval(0.0)) >= 1 - h) return {kInf, phi.eval(0.0)};
  auto probe = [&](double r, double th) {
    if (!(r >= 1 - h && r < 1)) return;
    Complex w = std::polar(r, th);
    double v = n_phi2_of(preimages(phi, w));
    if (v > best.value) best = {v, w};
  };
  const double dr = h / opts.radial, dth = kTwoPi / opts.angular;
  for (int i = 0; i < opts.radial; ++i)
    for (int k = 0; k < opts.angular; ++k) probe(1 - h + i * dr, k * dth);
  if (opts.refine && best.value > 0) {
    const double r0 = std::abs(best.w_argmax), t0 = std::arg(best.w_argmax);
    constexpr int kLocal = 8;
    for (int i = -kLocal; i <= kLocal; ++i)
      for (int k = -kLocal; k <= kLocal; ++k) probe(r0 + i * dr / kLocal, t0 + k * dth / kLocal);
  }
  return best;
}

std::vector<EquivalenceRow> equivalence_report(const AnalyticSymbol& phi, const std::vector<double>& h_grid,
                                               const EquivalenceOptions& opts) {
  if (!(opts.c >= 1)) throw InvalidArgument("equivalence_report: C must be >= 1");
  for (double h : h_grid)
    if (!(h > 0 && h < 1)) throw InvalidArgument("equivalence_report: h must be in (0, 1)");
  DiskMeasure area = pullback_area(phi, opts.area_samples, opts.seed);
  DiskMeasure boundary = pullback_boundary(phi, opts.boundary_samples);
  auto ratio = [](double a, double b) { return a == 0 ? 0.0 : a / b; };
  std::vector<EquivalenceRow> rows;
  for (double h : h_grid) {
    EquivalenceRow row{};
    row.h = h;
    row.nu2 = nu2(phi, h, opts.nu).value;
    row.rho2 = carleson_rho(area, h, opts.rho).rho;
    row.rho1 = carleson_rho(boundary, h, opts.rho).rho;
    row.rho1_ch = carleson_rho(boundary, std::min(1.0, opts.c * h), opts.rho).rho;
    row.ratio_nu_rho2 = ratio(row.nu2, row.rho2);
    row.ratio_rho2_rho1 = ratio(row.rho2, row.rho1_ch * row.rho1_ch);
    rows.push_back(row);
  }
  return rows;
}

EquivalenceFit fit_equivalence_constant(const AnalyticSymbol& phi, const std::vector<double>& h_grid,
                                        const EquivalenceOptions& opts, double c_max) {
  if (!(c_max >= 1)) throw InvalidArgument("fit_equivalence_constant: c_max must be >= 1");
  DiskMeasure area = pullback_area(phi, opts.area_samples, opts.seed);
  EquivalenceFit fit;
  for (double h : h_grid) fit.nu2.push_back(nu2(phi, h, opts.nu).value);
  std::map<double, double> cache;
  auto rho2 = [&](double t) {
    t = std::min(1.0, t);
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    double v = carleson_rho(area, t, opts.rho).rho;
    cache.emplace(t, v);
    return v;
  };
  for (int k = 0;; ++k) {
    const double c = std::exp2(k / 4.0);
    if (c > c_max * (1 + 1e-12)) break;
    bool ok = true;
    for (std::size_t i = 0; ok && i < h_grid.size(); ++i) {
      const double h = h_grid[i];
      ok = fit.nu2[i] <= c * rho2(c * h) && rho2(h / c) / c <= fit.nu2[i];
    }
    if (ok) {
      fit.found = true;
      fit.c = c;
      break;
    }
  }
  return fit;
}

}  // namespace oclab
