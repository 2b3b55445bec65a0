#pragma once

#include "oclab/measure.hpp"
#include "oclab/orlicz.hpp"
#include "oclab/symbols.hpp"

#include <cstdint>
#include <vector>

namespace oclab {

// Atoms φ(z_i), z_i area-uniform from the seeded shard sampler, weight 1/n.
DiskMeasure pullback_area(const AnalyticSymbol& phi, std::size_t n_samples, std::uint64_t seed);

// Atoms φ*(e^{iθ_i}) on the midpoint grid θ_i = 2π(i + 1/2)/n, weight 1/n.
DiskMeasure pullback_boundary(const AnalyticSymbol& phi, std::size_t n_theta);

// Discrete measure on (0, 1) that is not 2-Carleson although the embedding
// is bounded: atoms at x_n = 1 - Ψ(2a_n)^{-1/2}, μ([x_n, 1]) = n/Ψ(2a_n).
struct Example21 {
  DiskMeasure mu = DiskMeasure::zero();
  std::vector<double> a;      // a_1..a_N
  std::vector<double> psi2a;  // Ψ(2 a_n)
  std::vector<double> x;      // atom positions
};
Example21 example_measure_21(const OrliczFunction& psi, int n_terms);

// Atoms 1/Ψ(2^n y_n) at r_n = 1 - Ψ(y_n)^{-1/2}, from sequences
// x_n <= y_n <= x_{n+1} with Ψ(2x_n)/Ψ(x_n) >= 2 Ψ(2^n y_n)/Ψ(y_n).
struct Example22 {
  DiskMeasure mu = DiskMeasure::zero();
  std::vector<double> x, y;
  std::vector<double> r;
};
Example22 example_measure_22(const OrliczFunction& psi, int n_terms);

}  // namespace oclab
