#pragma once

#include "oclab/measure.hpp"

#include <vector>

namespace oclab {

struct RhoOptions {
  int xi_grid = 256;  // uniform ξ grid, ξ_k = e^{2πik/M}
  WindowKind kind = WindowKind::W;
  int refine_iters = 40;  // golden-section steps around the grid argmax
};

struct RhoEstimate {
  double rho = 0;
  Complex xi{1.0, 0.0};
  double stderr = 0;
};

// Fast repeated window queries at one scale h: only points with |z| >= 1-h
// are kept, sorted by argument.
class WindowIndex {
 public:
  WindowIndex(const DiskMeasure& mu, double h);
  MassEstimate mass(const CarlesonWindow& w) const;

 private:
  const DiskMeasure* mu_;
  double h_;
  std::vector<double> theta_;
  std::vector<Complex> z_;
  std::vector<double> prefix_;
  bool equal_weights_ = false;
  double unit_ = 0;  // weight per sample for equal-weight measures
  double total_ = 0;
  double n_all_ = 0;    // sample count behind the MC error
  bool monte_carlo_ = false;
};

// sup_ξ μ(W(ξ, h)) by grid search plus golden-section refinement. A lower
// bound for the true sup; exact for rotation invariant measures.
RhoEstimate carleson_rho(const DiskMeasure& mu, double h, const RhoOptions& opts = {});

// Log-spaced points in [lo, hi], both ends included.
std::vector<double> log_grid(double lo, double hi, int per_decade);

// max over t in t_grid of ρ(t)/t² (the grid stands in for 0 < t < h).
double k_mu2(const DiskMeasure& mu, const std::vector<double>& t_grid, const RhoOptions& opts = {});
double k_mu2(const DiskMeasure& mu, double h, double t_min, int per_decade = 40,
             const RhoOptions& opts = {});

}  // namespace oclab
