#pragma once

#include "oclab/orlicz.hpp"

#include <optional>
#include <string>
#include <vector>

namespace oclab {

enum class ProbeCondition { Delta2, DeltaSquared, Nabla0, HdB };
enum class ProbeVerdict { HoldsOnGrid, FailsWithWitness };

std::string to_string(ProbeCondition c);
std::string to_string(ProbeVerdict v);

struct ProbeSpec {
  ProbeCondition condition = ProbeCondition::Delta2;
  std::vector<double> x_grid;     // positive, increasing
  std::vector<double> constants;  // candidate C (Δ₂, ∇₀), α (Δ²) or B (HdB)
  std::vector<double> x0_grid;    // ∇₀ only: candidate thresholds
  double a = 1.0;                 // HdB parameter A
};

// Defaults: x log-spaced on [1, 1e3], constants 2^1..2^40, x0 = first grid points.
ProbeSpec default_probe(ProbeCondition c, double a = 1.0);

// One failing point. For ∇₀ the pair is (x, y); otherwise y is unused.
// lhs/rhs are log-domain sides of the inequality at the largest constant.
struct ProbeWitness {
  double x = 0;
  double y = 0;
  double constant = 0;
  double lhs = 0;
  double rhs = 0;
};

struct ProbeReport {
  ProbeCondition condition;
  ProbeVerdict verdict;
  // Holds: the smallest working constant (and x0 for ∇₀).
  std::optional<double> constant;
  std::optional<double> x0;
  std::vector<ProbeWitness> witnesses;
  std::string grid;
  // A finite grid can only refute; "holds" is never conclusive.
  bool conclusive = false;
  double a = 1.0;
};

ProbeReport condition_probe(const OrliczFunction& psi, const ProbeSpec& spec);

// Re-evaluates the inequality at the witness with its constant; true if it fails.
bool witness_violates(const OrliczFunction& psi, const ProbeReport& report, const ProbeWitness& w);

}  // namespace oclab
