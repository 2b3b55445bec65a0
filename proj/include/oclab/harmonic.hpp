#pragma once

#include "oclab/disk.hpp"
#include "oclab/orlicz.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace oclab {

using DiskFunction = std::function<Complex(Complex)>;

// H_a(z) = (1 - |a|²)² / |1 - conj(a) z|⁴
double berezin(Complex a, Complex z);

// ∫ H_a dA over the disk (normalized area): trapezoid in θ, adaptive
// Gauss–Kronrod in r.
double berezin_mass(Complex a);

// Λ_f = Σ (sup over Δ_k of |f|) 1_{Δ_k} on Hastings–Luecking cells. Cell sups
// come from an 8×8 grid per cell pushed toward the outer radius, so they are
// lower bounds. The first generations use extra angular nodes. Cells of generation <= depth are tabulated; deeper cells are
// evaluated on demand.
class LambdaF {
 public:
  LambdaF(DiskFunction f, int depth);
  int depth() const { return depth_; }
  double cell_sup(long k) const;
  double operator()(Complex z) const;

 private:
  DiskFunction f_;
  int depth_;
  std::vector<double> sup_;
};

LambdaF lambda_f(DiskFunction f, int depth);
double sampled_cell_sup(const DiskFunction& f, long k);

// Dyadic cells of the annulus 1/2 <= |z| < 1 in log-polar coordinates
// (s, θ) = (log|z|, arg z): generation n splits [-log 2, 0) × [0, 2π) into
// 2^{n+1} × 2^{n+1} half-open rectangles; j is the radial index, k angular.
struct DyadicCell {
  int generation = 0;
  long j = 0, k = 0;
};

struct LogRect {
  double s0, s1, t0, t1;
};
LogRect dyadic_rect(const DyadicCell& c);
double dyadic_area(const DyadicCell& c);  // normalized area, closed form

struct StoppingCell {
  DyadicCell cell;
  double average = 0;  // (1/A(S)) ∫_S |f| dA
};

struct CZOptions {
  double q = 1e-3;  // relative quadrature tolerance
  int max_generation = 6;
};

struct CZDecomposition {
  std::vector<StoppingCell> cells;
  double annulus_average = 0;  // of |f|/threshold
  long residual_cells = 0;  // generation-max cells that never stopped
  double residual_area = 0;
};

// Stopping time on |f|/threshold: a cell stops at the first generation whose
// average exceeds 1. Throws NumericError when the cell quadrature does not
// converge.
CZDecomposition cz_decompose(const DiskFunction& f, double threshold = 1.0, const CZOptions& opts = {});
double dyadic_average(const DiskFunction& f, const DyadicCell& c, double q = 1e-3);
// CSV with header generation,j,k,average
std::string to_csv(const CZDecomposition& d);

enum class DistributionFamily { HalfPlane, Sector };
std::string to_string(DistributionFamily f);

// f(z) = f0 + c (1 + z)/(1 - z); the sector family takes its principal square root.
Complex distribution_test_function(DistributionFamily fam, Complex f0, double c, Complex z);

struct DistributionPoint {
  double lambda = 0, mass = 0, stderr = 0;
};

struct DistributionOptions {
  double c = 0.5;
  std::size_t samples = 1000000;
  std::uint64_t seed = 42;
  int strata = 24;  // dyadic shells around z = 1
};

// 𝒜({|f| > λ}) by Monte Carlo stratified on the shells 2^{-m-1} <= |z - 1| < 2^{-m}.
std::vector<DistributionPoint> distribution_ratio(DistributionFamily fam, Complex f0,
                                                  const std::vector<double>& lambda_grid,
                                                  const DistributionOptions& opts = {});

struct DistributionFit {
  double k = 0;              // max λ² 𝒜(|f| > λ)/𝒜(|f| > 1)
  double c1 = 0;             // max λ² 𝒜(|f| > λ)/|f(0)|²
  double c2 = 0;             // max λ⁴ 𝒜(|f| > λ)/|f(0)|⁴
  double tail_exponent = 0;  // least-squares slope of log 𝒜 against log λ on the upper half of the grid
};

DistributionFit fit_distribution(DistributionFamily fam, Complex f0, const std::vector<double>& lambda_grid,
                                 const DistributionOptions& opts = {});

struct PaleyZygmund {
  double lhs = 0, rhs = 0, stderr = 0;
};
// P(X > a E X) against (1 - a)² (E X)² / E X², both from the samples.
PaleyZygmund paley_zygmund_check(const std::vector<double>& samples, double a);

}  // namespace oclab
