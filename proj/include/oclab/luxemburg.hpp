#pragma once

#include "oclab/orlicz.hpp"

#include <vector>

namespace oclab {

struct WeightedValue {
  double value;   // |f| at a sample point, >= 0
  double weight;  // measure of the sample, > 0
};

// Smallest C with Σ w Ψ(v/C) <= 1, by bisection in log C. Returns 0 when all
// values vanish; throws InvalidArgument on empty input or zero total weight.
double luxemburg_norm(const std::vector<WeightedValue>& samples, const OrliczFunction& psi);

// Σ w Ψ(v/C); the quantity the norm drives to 1.
double modular(const std::vector<WeightedValue>& samples, const OrliczFunction& psi, double c);

}  // namespace oclab
