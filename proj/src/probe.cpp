#include "oclab/probe.hpp"

#include "oclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace oclab {

namespace bmp = boost::multiprecision;

std::string to_string(ProbeCondition c) {
  switch (c) {
    case ProbeCondition::Delta2: return "Delta2";
    case ProbeCondition::DeltaSquared: return "DeltaSquared";
    case ProbeCondition::Nabla0: return "Nabla0";
    case ProbeCondition::HdB: return "HdB";
  }
  return "?";
}

std::string to_string(ProbeVerdict v) {
  return v == ProbeVerdict::HoldsOnGrid ? "holds-on-grid" : "fails-with-witness";
}

namespace {

const Quad kInf = std::numeric_limits<Quad>::infinity();

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return g;
}

// log Ψ(x); +inf when Ψ(x) leaves the log range.
Quad log_psi(const OrliczFunction& psi, const LogReal& x) {
  try {
    LogReal v = psi.eval(x);
    return v.is_zero() ? -kInf : v.log();
  } catch (const OverflowError&) {
    return kInf;
  }
}

Quad log_psi(const OrliczFunction& psi, double x) { return log_psi(psi, LogReal(x)); }

bool le(const Quad& lhs, const Quad& rhs) {
  if (bmp::isinf(rhs) && rhs > 0) return true;
  if (bmp::isinf(lhs) && lhs > 0) return false;
  Quad mag = bmp::abs(rhs);
  Quad slack = Quad(1e-12) * (mag > 1 ? mag : Quad(1));
  return lhs <= rhs + slack;
}

struct Sides {
  Quad lhs, rhs;
};

Sides sides_at(const OrliczFunction& psi, ProbeCondition cond, double a, double x, double y,
               double c) {
  switch (cond) {
    case ProbeCondition::Delta2:
      return {log_psi(psi, 2 * x) - log_psi(psi, x), bmp::log(Quad(c))};
    case ProbeCondition::DeltaSquared:
      return {2 * log_psi(psi, x), log_psi(psi, c * x)};
    case ProbeCondition::Nabla0:
      return {log_psi(psi, 2 * x) - log_psi(psi, x), log_psi(psi, 2 * c * y) - log_psi(psi, y)};
    case ProbeCondition::HdB: {
      LogReal lx(x);
      LogReal left = LogReal(a) * psi.eval_inv(lx.pow(2.0));
      LogReal right = LogReal(c) * psi.eval_inv(lx);
      return {log_psi(psi, left), 2 * log_psi(psi, right)};
    }
  }
  throw InvalidArgument("unknown condition");
}

std::string describe(const ProbeSpec& s) {
  std::ostringstream out;
  out << "x: " << s.x_grid.size() << " points in [" << s.x_grid.front() << ", " << s.x_grid.back()
      << "]; constants: " << s.constants.size() << " in [" << s.constants.front() << ", "
      << s.constants.back() << "]";
  if (s.condition == ProbeCondition::Nabla0) out << "; x0: " << s.x0_grid.size() << " candidates";
  if (s.condition == ProbeCondition::HdB) out << "; A = " << s.a;
  return out.str();
}

}  // namespace

ProbeSpec default_probe(ProbeCondition c, double a) {
  ProbeSpec s;
  s.condition = c;
  s.a = a;
  s.x_grid = log_spaced(1.0, 1e3, 61);
  if (c == ProbeCondition::HdB) {
    for (int k = 0; k <= 160; ++k) s.constants.push_back(std::max(a, 1.0) * std::pow(2.0, k / 4.0));
  } else {
    for (int k = c == ProbeCondition::Delta2 ? 0 : 1; k <= 40; ++k) s.constants.push_back(std::ldexp(1.0, k));
  }
  if (c == ProbeCondition::Nabla0) s.x0_grid = {s.x_grid[0], s.x_grid[10], s.x_grid[20], s.x_grid[30]};
  return s;
}

ProbeReport condition_probe(const OrliczFunction& psi, const ProbeSpec& spec_in) {
  ProbeSpec spec = spec_in;
  if (spec.x_grid.empty() || spec.constants.empty()) throw InvalidArgument("probe: empty grid");
  for (double x : spec.x_grid) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("probe: grid must be positive");
  }
  std::sort(spec.x_grid.begin(), spec.x_grid.end());
  std::sort(spec.constants.begin(), spec.constants.end());
  if (spec.condition == ProbeCondition::HdB) {
    std::erase_if(spec.constants, [&](double b) { return b < spec.a; });
    if (spec.constants.empty()) throw InvalidArgument("probe: HdB needs candidates B >= A");
  }
  if (spec.condition == ProbeCondition::Nabla0) {
    if (spec.x0_grid.empty()) throw InvalidArgument("probe: Nabla0 needs an x0 grid");
    std::sort(spec.x0_grid.begin(), spec.x0_grid.end());
  }

  ProbeReport rep{spec.condition, ProbeVerdict::HoldsOnGrid, {}, {}, {}, describe(spec), false, spec.a};
  const auto& xs = spec.x_grid;

  // Failing points for constant c (and threshold x0 for ∇₀), stopping after `limit`.
  auto failures = [&](double c, double x0, size_t limit) {
    std::vector<ProbeWitness> out;
    if (spec.condition == ProbeCondition::Nabla0) {
      // For each y, the worst admissible x is the running argmax of the left side.
      Quad best = -kInf;
      double best_x = 0;
      for (double y : xs) {
        if (y < x0) continue;
        Quad g = log_psi(psi, 2 * y) - log_psi(psi, y);
        if (g > best) {
          best = g;
          best_x = y;
        }
        Sides s = sides_at(psi, spec.condition, spec.a, best_x, y, c);
        if (!le(s.lhs, s.rhs)) {
          out.push_back({best_x, y, c, double(s.lhs), double(s.rhs)});
          if (out.size() >= limit) break;
        }
      }
    } else {
      for (double x : xs) {
        Sides s = sides_at(psi, spec.condition, spec.a, x, 0.0, c);
        if (!le(s.lhs, s.rhs)) {
          out.push_back({x, 0.0, c, double(s.lhs), double(s.rhs)});
          if (out.size() >= limit) break;
        }
      }
    }
    return out;
  };

  if (spec.condition == ProbeCondition::Nabla0) {
    for (double c : spec.constants) {
      for (double x0 : spec.x0_grid) {
        if (failures(c, x0, 1).empty()) {
          rep.constant = c;
          rep.x0 = x0;
          return rep;
        }
      }
    }
    rep.witnesses = failures(spec.constants.back(), spec.x0_grid.back(), 5);
  } else {
    for (double c : spec.constants) {
      if (failures(c, 0.0, 1).empty()) {
        rep.constant = c;
        return rep;
      }
    }
    rep.witnesses = failures(spec.constants.back(), 0.0, 5);
  }
  rep.verdict = ProbeVerdict::FailsWithWitness;
  rep.conclusive = true;
  return rep;
}

bool witness_violates(const OrliczFunction& psi, const ProbeReport& report, const ProbeWitness& w) {
  Sides s = sides_at(psi, report.condition, report.a, w.x, w.y, w.constant);
  return !le(s.lhs, s.rhs);
}

}  // namespace oclab
