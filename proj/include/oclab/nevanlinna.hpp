#pragma once

#include "oclab/carleson.hpp"
#include "oclab/symbols.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace oclab {

enum class PreimageMethod { ClosedForm, PolynomialRoots, ChainInversion, GridRefinement };
std::string to_string(PreimageMethod m);

struct Preimage {
  Complex z;
  int multiplicity = 1;
  double log_inv_abs = 0;  // log(1/|z|), computed without cancellation where possible
};

struct PreimageSet {
  Complex w;
  std::vector<Preimage> roots;
  PreimageMethod method = PreimageMethod::ClosedForm;
  double residual = 0;  // max |φ(z) - w| over the listed roots
  bool possible_missed_roots = false;
  bool singular = false;  // w = φ(0): N_φ(w) is +∞
};

// True when w = φ(0) (or φ is constant and equal to w).
bool is_singular_target(const AnalyticSymbol& phi, Complex w);

PreimageSet preimages(const AnalyticSymbol& phi, Complex w, double tol = 1e-12);

// Counting functions; +∞ at singular targets.
double n_phi(const AnalyticSymbol& phi, Complex w);
double n_phi_r(const AnalyticSymbol& phi, double r, Complex w);
enum class CountingMode { Direct, Integral };
double n_phi2(const AnalyticSymbol& phi, Complex w, CountingMode mode = CountingMode::Direct);
// From a precomputed preimage set.
double n_phi_of(const PreimageSet& p);
double n_phi_r_of(const PreimageSet& p, double r);
double n_phi2_of(const PreimageSet& p);
double n_phi2_integral_of(const PreimageSet& p, Complex phi0);

struct Nu2Options {
  int radial = 64;
  int angular = 256;
  bool refine = true;
};

struct Nu2Estimate {
  double value = 0;
  Complex w_argmax{0.0, 0.0};
};

// sup of N_{φ,2}(w) over 1-h <= |w| < 1 on a polar grid plus one local
// refinement; a lower bound for the true sup.
Nu2Estimate nu2(const AnalyticSymbol& phi, double h, const Nu2Options& opts = {});

struct EquivalenceOptions {
  std::size_t area_samples = 1000000;
  std::size_t boundary_samples = 1 << 16;
  std::uint64_t seed = 42;
  double c = 2.0;  // rescaling constant in ρ₂(h)/ρ₁(Ch)²
  RhoOptions rho{};
  Nu2Options nu{};
};

struct EquivalenceRow {
  double h, nu2, rho2, rho1, rho1_ch;
  double ratio_nu_rho2;    // ν₂(h)/ρ₂(h)
  double ratio_rho2_rho1;  // ρ₂(h)/ρ₁(Ch)²
};

std::vector<EquivalenceRow> equivalence_report(const AnalyticSymbol& phi, const std::vector<double>& h_grid,
                                               const EquivalenceOptions& opts = {});

struct EquivalenceFit {
  bool found = false;
  double c = 0;  // smallest C on the grid 2^{k/4} in [1, c_max]
  std::vector<double> nu2;
};

// Smallest C with ν₂(h) <= C ρ₂(Ch) and ρ₂(h/C)/C <= ν₂(h) for every h in
// the grid (ρ₂ from the area pull-back, scales clamped to 1).
EquivalenceFit fit_equivalence_constant(const AnalyticSymbol& phi, const std::vector<double>& h_grid,
                                        const EquivalenceOptions& opts = {}, double c_max = 100);

}  // namespace oclab
