#include "oclab/measure.hpp"

#include "oclab/errors.hpp"

#include <cmath>

namespace oclab {

DiskMeasure DiskMeasure::discrete(std::vector<Atom> atoms) {
  for (const auto& a : atoms) {
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw InvalidArgument("atom masses must be positive");
    if (!(std::abs(a.z) <= 1.0)) throw InvalidArgument("atoms must lie in the closed disk");
  }
  return DiskMeasure(Discrete{std::move(atoms)});
}

DiskMeasure DiskMeasure::sampled(std::vector<Complex> points, double total, std::string source,
                                 std::uint64_t seed, bool monte_carlo) {
  if (!(total >= 0.0) || !std::isfinite(total)) throw InvalidArgument("total mass must be finite");
  if (points.empty() && total > 0.0) throw InvalidArgument("sampled measure without points");
  for (Complex z : points) {
    if (!(std::abs(z) <= 1.0)) throw InvalidArgument("sample points must lie in the closed disk");
  }
  return DiskMeasure(Sampled{std::move(points), total, std::move(source), seed, monte_carlo});
}

double DiskMeasure::total_mass() const {
  if (const auto* d = std::get_if<Discrete>(&v_)) {
    double s = 0;
    for (const auto& a : d->atoms) s += a.mass;
    return s;
  }
  if (const auto* s = std::get_if<Sampled>(&v_)) return s->total;
  return 1.0;
}

double DiskMeasure::window_mass(const CarlesonWindow& w) const { return window_mass_estimate(w).mass; }

MassEstimate DiskMeasure::window_mass_estimate(const CarlesonWindow& w) const {
  if (const auto* d = std::get_if<Discrete>(&v_)) {
    double s = 0;
    for (const auto& a : d->atoms) {
      if (in_window(a.z, w)) s += a.mass;
    }
    return {s, 0.0};
  }
  if (const auto* s = std::get_if<Sampled>(&v_)) {
    if (s->points.empty()) return {0.0, 0.0};
    std::size_t hits = 0;
    for (Complex z : s->points) hits += in_window(z, w) ? 1 : 0;
    double n = double(s->points.size());
    double p = hits / n;
    double err = s->monte_carlo ? s->total * std::sqrt(p * (1 - p) / n) : 0.0;
    return {s->total * p, err};
  }
  const auto& c = std::get<ClosedForm>(v_);
  double m = c.kind == ClosedFormKind::NormalizedArea ? window_area(w.kind, w.h) : window_arc(w.kind, w.h);
  return {m, 0.0};
}

std::vector<Atom> DiskMeasure::atoms() const {
  if (const auto* d = std::get_if<Discrete>(&v_)) return d->atoms;
  if (const auto* s = std::get_if<Sampled>(&v_)) {
    std::vector<Atom> out;
    out.reserve(s->points.size());
    double w = s->points.empty() ? 0.0 : s->total / double(s->points.size());
    for (Complex z : s->points) out.push_back({z, w});
    return out;
  }
  throw InvalidArgument("closed-form measures have no atom list");
}

}  // namespace oclab
