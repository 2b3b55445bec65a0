#include "oclab/harmonic.hpp"

#include "oclab/errors.hpp"
#include "oclab/rng.hpp"
#include "oclab/text.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace oclab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLog2 = std::numbers::ln2;

// angular trapezoid points for the Berezin mass; aliasing error ~ |a|^M
constexpr int kBerezinAngles = 1024;

// sample grid per HL cell
constexpr int kSupGrid = 8;
constexpr int kMinRingAngles = 64;

}  // namespace

double berezin(Complex a, Complex z) {
  double num = 1 - std::norm(a);
  double den = std::norm(1.0 - std::conj(a) * z);
  return num * num / (den * den);
}

double berezin_mass(Complex a) {
  if (!(std::abs(a) < 1)) throw InvalidArgument("berezin_mass: |a| must be < 1");
  auto ring = [&](double r) {
    double s = 0;
    for (int k = 0; k < kBerezinAngles; ++k) s += berezin(a, std::polar(r, 2 * kPi * k / kBerezinAngles));
    return 2 * r * s / kBerezinAngles;  // (1/π) ∫ dθ r = 2 r mean
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(ring, 0.0, 1.0, 20, 1e-12);
}

double sampled_cell_sup(const DiskFunction& f, long k) {
  PolarBox b = hl_box(k);
  const bool full = k == 0;
  // wide cells of the first generations get the angular density of a 64-gon
  const int angles = full ? kMinRingAngles
                          : std::max(kSupGrid, int(std::ceil((b.theta_hi - b.theta_lo) / (2 * kPi) * kMinRingAngles)) + 1);
  double best = 0;
  for (int i = 0; i < kSupGrid; ++i) {
    // quadratic spacing crowds nodes at the outer radius, where |f| peaks
    double t = 1 - double(kSupGrid - 1 - i) * (kSupGrid - 1 - i) / double((kSupGrid - 1) * (kSupGrid - 1));
    double r = b.r_in + (b.r_out - b.r_in) * t;
    for (int m = 0; m < angles; ++m) {
      double th = full ? 2 * kPi * m / angles : b.theta_lo + (b.theta_hi - b.theta_lo) * m / (angles - 1);
      best = std::max(best, std::abs(f(std::polar(r, th))));
    }
  }
  return best;
}

LambdaF::LambdaF(DiskFunction f, int depth) : f_(std::move(f)), depth_(depth) {
  if (depth < 0 || depth > 12) throw InvalidArgument("lambda_f: depth must be in [0, 12]");
  const long cells = (1L << (depth + 1)) - 1;
  sup_.resize(cells);
  for (long k = 0; k < cells; ++k) sup_[k] = sampled_cell_sup(f_, k);
}

double LambdaF::cell_sup(long k) const {
  if (k < long(sup_.size())) return sup_[k];
  return sampled_cell_sup(f_, k);
}

double LambdaF::operator()(Complex z) const { return cell_sup(hl_index(z).k); }

LambdaF lambda_f(DiskFunction f, int depth) { return LambdaF(std::move(f), depth); }

LogRect dyadic_rect(const DyadicCell& c) {
  const double m = std::ldexp(1.0, c.generation + 1);
  if (c.generation < 0 || c.j < 0 || c.k < 0 || c.j >= m || c.k >= m) {
    throw InvalidArgument("dyadic_rect: cell index out of range");
  }
  const double ds = kLog2 / m, dt = 2 * kPi / m;
  return {-kLog2 + c.j * ds, -kLog2 + (c.j + 1) * ds, c.k * dt, (c.k + 1) * dt};
}

double dyadic_area(const DyadicCell& c) {
  LogRect r = dyadic_rect(c);
  // (1/π) ∫∫ e^{2s} ds dθ
  return (r.t1 - r.t0) / (2 * kPi) * (std::exp(2 * r.s1) - std::exp(2 * r.s0));
}

namespace {

using GL16 = boost::math::quadrature::gauss<double, 16>;

double gl_rect(const std::function<double(Complex)>& g, const LogRect& r) {
  return GL16::integrate(
      [&](double s) {
        double e = std::exp(2 * s);
        return e * GL16::integrate([&](double t) { return g(std::exp(Complex(s, t))); }, r.t0, r.t1);
      },
      r.s0, r.s1);
}

std::array<LogRect, 4> quarter(const LogRect& r) {
  double sm = 0.5 * (r.s0 + r.s1), tm = 0.5 * (r.t0 + r.t1);
  return {LogRect{r.s0, sm, r.t0, tm}, LogRect{r.s0, sm, tm, r.t1}, LogRect{sm, r.s1, r.t0, tm},
          LogRect{sm, r.s1, tm, r.t1}};
}

// Local relative test, with an absolute floor so point singularities on the
// cell boundary terminate.
double adapt(const std::function<double(Complex)>& g, const LogRect& r, double coarse, double q, double floor,
             int depth) {
  auto parts = quarter(r);
  std::array<double, 4> v;
  double fine = 0;
  for (int i = 0; i < 4; ++i) fine += v[i] = gl_rect(g, parts[i]);
  double diff = std::abs(fine - coarse);
  if (diff <= q * std::abs(fine) || diff <= floor) return fine;
  if (depth == 0) throw NumericError("dyadic quadrature did not converge");
  double sum = 0;
  for (int i = 0; i < 4; ++i) sum += adapt(g, parts[i], v[i], q, floor, depth - 1);
  return sum;
}

double rect_average(const std::function<double(Complex)>& g, const LogRect& r, double q) {
  double coarse = gl_rect(g, r);
  double integral = adapt(g, r, coarse, q, 1e-3 * q * std::abs(coarse) + 1e-300, 40);
  double area = (r.t1 - r.t0) * (std::exp(2 * r.s1) - std::exp(2 * r.s0)) / 2;
  if (!std::isfinite(integral)) throw NumericError("dyadic quadrature: non-finite integral");
  return integral / area;
}

}  // namespace

double dyadic_average(const DiskFunction& f, const DyadicCell& c, double q) {
  return rect_average([&](Complex z) { return std::abs(f(z)); }, dyadic_rect(c), q);
}

CZDecomposition cz_decompose(const DiskFunction& f, double threshold, const CZOptions& opts) {
  if (!(threshold > 0)) throw InvalidArgument("cz_decompose: threshold must be positive");
  if (!(opts.q > 0 && opts.q <= 0.1)) throw InvalidArgument("cz_decompose: q must be in (0, 0.1]");
  if (opts.max_generation < 0 || opts.max_generation > 10) {
    throw InvalidArgument("cz_decompose: max_generation must be in [0, 10]");
  }
  std::function<double(Complex)> g = [&](Complex z) { return std::abs(f(z)) / threshold; };
  CZDecomposition out;
  std::vector<DyadicCell> stack;
  for (long j = 1; j >= 0; --j)
    for (long k = 1; k >= 0; --k) stack.push_back({0, j, k});
  double weighted = 0;
  while (!stack.empty()) {
    DyadicCell c = stack.back();
    stack.pop_back();
    double avg = rect_average(g, dyadic_rect(c), opts.q);
    if (c.generation == 0) weighted += avg * dyadic_area(c);
    if (avg > 1) {
      out.cells.push_back({c, avg});
    } else if (c.generation == opts.max_generation) {
      ++out.residual_cells;
      out.residual_area += dyadic_area(c);
    } else {
      for (long a = 1; a >= 0; --a)
        for (long b = 1; b >= 0; --b) stack.push_back({c.generation + 1, 2 * c.j + a, 2 * c.k + b});
    }
  }
  out.annulus_average = weighted / 0.75;
  return out;
}

std::string to_csv(const CZDecomposition& d) {
  std::ostringstream os;
  os << "generation,j,k,average\n";
  for (const auto& s : d.cells) {
    os << s.cell.generation << ',' << s.cell.j << ',' << s.cell.k << ',' << format_double(s.average) << '\n';
  }
  return os.str();
}

std::string to_string(DistributionFamily f) { return f == DistributionFamily::HalfPlane ? "halfplane" : "sector"; }

Complex distribution_test_function(DistributionFamily fam, Complex f0, double c, Complex z) {
  Complex v = f0 + c * (1.0 + z) / (1.0 - z);
  return fam == DistributionFamily::HalfPlane ? v : std::sqrt(v);
}

std::vector<DistributionPoint> distribution_ratio(DistributionFamily fam, Complex f0,
                                                  const std::vector<double>& lambda_grid,
                                                  const DistributionOptions& opts) {
  if (!(f0.real() >= 0)) throw InvalidArgument("distribution_ratio: Re f0 must be >= 0");
  if (!(opts.c > 0)) throw InvalidArgument("distribution_ratio: c must be positive");
  if (opts.strata < 2 || opts.samples < std::size_t(opts.strata) * 100) {
    throw InvalidArgument("distribution_ratio: too few samples for the strata");
  }
  for (double l : lambda_grid)
    if (!(l > 0)) throw InvalidArgument("distribution_ratio: lambda must be positive");
  const int m_count = opts.strata;
  const std::size_t per = opts.samples / (m_count + 1);
  std::vector<double> mass(lambda_grid.size(), 0.0), var(lambda_grid.size(), 0.0);
  std::vector<std::size_t> hits(lambda_grid.size());
  // stratum 0 is D \ S(1, 1); stratum m >= 1 is the shell 2^{-m} <= |z - 1| < 2^{-m+1}
  // (the last one reaches down to z = 1)
  for (int s = 0; s <= m_count; ++s) {
    std::mt19937_64 gen(derive_seed(opts.seed, std::uint64_t(s)));
    double area, r0 = 0, r1 = 0;
    if (s == 0) {
      area = 1 - window_area(WindowKind::S, 1.0);
    } else {
      r1 = std::ldexp(1.0, -s + 1);
      r0 = s == m_count ? 0.0 : std::ldexp(1.0, -s);
      area = window_area(WindowKind::S, r1) - window_area(WindowKind::S, r0);
    }
    std::fill(hits.begin(), hits.end(), 0);
    std::size_t got = 0;
    while (got < per) {
      Complex z;
      if (s == 0) {
        z = std::polar(std::sqrt(unit_double(gen())), 2 * kPi * unit_double(gen()));
        if (std::abs(z - 1.0) < 1.0) continue;
      } else {
        double rho = std::sqrt(unit_double(gen()) * (r1 * r1 - r0 * r0) + r0 * r0);
        double phi = kPi / 2 + kPi * unit_double(gen());
        z = 1.0 + std::polar(rho, phi);
        if (!(std::abs(z) < 1.0) || rho < r0) continue;
      }
      ++got;
      double v = std::abs(distribution_test_function(fam, f0, opts.c, z));
      for (std::size_t i = 0; i < lambda_grid.size(); ++i)
        if (v > lambda_grid[i]) ++hits[i];
    }
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
      double p = double(hits[i]) / double(per);
      mass[i] += area * p;
      var[i] += area * area * p * (1 - p) / double(per);
    }
  }
  std::vector<DistributionPoint> out;
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) out.push_back({lambda_grid[i], mass[i], std::sqrt(var[i])});
  return out;
}

DistributionFit fit_distribution(DistributionFamily fam, Complex f0, const std::vector<double>& lambda_grid,
                                 const DistributionOptions& opts) {
  if (lambda_grid.size() < 4) throw InvalidArgument("fit_distribution: need at least 4 lambda values");
  std::vector<double> grid = lambda_grid;
  grid.push_back(1.0);
  auto pts = distribution_ratio(fam, f0, grid, opts);
  const double at_one = pts.back().mass;
  pts.pop_back();
  const double f_at_0 = std::abs(distribution_test_function(fam, f0, opts.c, 0.0));
  DistributionFit fit;
  for (const auto& p : pts) {
    double l2 = p.lambda * p.lambda;
    if (at_one > 0) fit.k = std::max(fit.k, l2 * p.mass / at_one);
    fit.c1 = std::max(fit.c1, l2 * p.mass / (f_at_0 * f_at_0));
    fit.c2 = std::max(fit.c2, l2 * l2 * p.mass / std::pow(f_at_0, 4));
  }
  std::vector<double> sorted = lambda_grid;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& p : pts) {
    if (p.lambda < median || !(p.mass > 0)) continue;
    double x = std::log(p.lambda), y = std::log(p.mass);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++n;
  }
  if (n < 2) throw NumericError("fit_distribution: tail has fewer than two resolved points");
  fit.tail_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

PaleyZygmund paley_zygmund_check(const std::vector<double>& samples, double a) {
  if (!(a > 0 && a < 1)) throw InvalidArgument("paley_zygmund_check: a must be in (0, 1)");
  if (samples.empty()) throw InvalidArgument("paley_zygmund_check: no samples");
  double m1 = 0, m2 = 0;
  for (double x : samples) {
    if (!(x >= 0)) throw InvalidArgument("paley_zygmund_check: samples must be nonnegative");
    m1 += x;
    m2 += x * x;
  }
  const double n = double(samples.size());
  m1 /= n;
  m2 /= n;
  if (m2 == 0) throw NumericError("paley_zygmund_check: all samples vanish");
  std::size_t above = 0;
  for (double x : samples)
    if (x > a * m1) ++above;
  PaleyZygmund pz;
  pz.lhs = double(above) / n;
  pz.rhs = (1 - a) * (1 - a) * m1 * m1 / m2;
  pz.stderr = std::sqrt(pz.lhs * (1 - pz.lhs) / n);
  return pz;
}

}  // namespace oclab
