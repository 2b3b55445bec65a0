#pragma once

#include "oclab/disk.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace oclab {

struct Atom {
  Complex z;
  double mass;
};

enum class ClosedFormKind {
  BoundaryLebesgue,  // m, normalized arc length on the circle
  NormalizedArea,    // A = dA/π on the disk
};

struct MassEstimate {
  double mass = 0;
  double stderr = 0;  // Monte Carlo standard error; 0 for exact variants
};

// Finite positive measure on the closed disk.
class DiskMeasure {
 public:
  struct Discrete {
    std::vector<Atom> atoms;
  };
  // Equal-weight points; `source` and `seed` identify how to regenerate them.
  struct Sampled {
    std::vector<Complex> points;
    double total = 1.0;
    std::string source;
    std::uint64_t seed = 0;
    bool monte_carlo = true;  // false for deterministic grids
  };
  struct ClosedForm {
    ClosedFormKind kind;
  };
  using Variant = std::variant<Discrete, Sampled, ClosedForm>;

  static DiskMeasure zero() { return DiskMeasure(Discrete{}); }
  static DiskMeasure discrete(std::vector<Atom> atoms);
  static DiskMeasure sampled(std::vector<Complex> points, double total, std::string source,
                             std::uint64_t seed, bool monte_carlo = true);
  static DiskMeasure closed_form(ClosedFormKind kind) { return DiskMeasure(ClosedForm{kind}); }

  double total_mass() const;
  double window_mass(const CarlesonWindow& w) const;
  MassEstimate window_mass_estimate(const CarlesonWindow& w) const;
  // Rotation invariant measures have the same window mass at every ξ.
  bool rotation_invariant() const { return std::holds_alternative<ClosedForm>(v_); }
  // Atom list (sampled points get weight total/n). Throws for closed forms.
  std::vector<Atom> atoms() const;

  const Variant& variant() const { return v_; }

 private:
  explicit DiskMeasure(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

}  // namespace oclab
