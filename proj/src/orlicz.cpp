#include "oclab/orlicz.hpp"

#include "oclab/errors.hpp"

#include <cfloat>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace oclab {

namespace bmp = boost::multiprecision;

// ---------------------------------------------------------------- special

SpecialPiecewise SpecialPiecewise::build(double c1, double c2, int depth) {
  // Decimal inputs like 0.7853981634 overshoot π/4 in the 11th digit.
  constexpr double slack = 1e-9;
  if (!(c1 > 0.0) || c1 > std::numbers::pi / 4 * (1 + slack)) {
    throw InvalidArgument("special: c1 must lie in (0, pi/4]");
  }
  if (!(c2 >= std::numbers::pi * (1 - slack)) || !std::isfinite(c2)) {
    throw InvalidArgument("special: c2 must be >= pi");
  }
  if (depth < 1 || depth > 64) throw InvalidArgument("special: depth must be >= 1");

  SpecialPiecewise s;
  s.c1_ = c1;
  s.c2_ = c2;
  s.depth_ = depth;
  const LogReal lc1(c1), lc2(c2), three(3.0), half(0.5);

  s.alpha_ = {LogReal::zero(), LogReal::one()};
  s.beta_ = {half};  // (e^0 - 0)/2
  for (int n = 1; n <= depth; ++n) {
    const LogReal& a = s.alpha_[n];
    try {
      LogReal e = (lc2 * a.sqrt()).exp_of();
      s.beta_.push_back((e - three * a) * half);
    } catch (const OverflowError&) {
      throw OverflowError("special: beta_" + std::to_string(n) + " is not representable", n);
    }
    try {
      s.alpha_.push_back((lc1 * a).exp_of());
    } catch (const OverflowError&) {
      throw OverflowError("special: alpha_" + std::to_string(n + 1) + " is not representable",
                          n + 1);
    }
  }

  s.slope_ = {LogReal::zero(), LogReal::one()};
  s.shift_ = {LogReal::zero(), LogReal::zero()};
  for (int n = 1; n <= depth; ++n) {
    const LogReal& a = s.alpha_[n];
    s.slope_.push_back(s.slope_[n] * (a + s.shift_[n]) / (a + s.beta_[n]));
    s.shift_.push_back(s.beta_[n]);
    if (!(s.slope_[n + 1] < s.slope_[n])) {
      throw ConstructionError("special: slopes not strictly decreasing at n=" +
                              std::to_string(n + 1));
    }
  }

  s.f_node_ = {LogReal::zero()};
  for (int n = 1; n <= depth + 1; ++n) {
    s.f_node_.push_back(s.slope_[n] * (s.alpha_[n] + s.shift_[n]));
  }
  return s;
}

const LogReal& SpecialPiecewise::slope(int n) const {
  if (n < 1 || n >= static_cast<int>(slope_.size())) throw InvalidArgument("slope index");
  return slope_[n];
}

const LogReal& SpecialPiecewise::shift(int n) const {
  if (n < 1 || n >= static_cast<int>(shift_.size())) throw InvalidArgument("shift index");
  return shift_[n];
}

LogReal SpecialPiecewise::intercept(int n) const { return slope(n) * shift(n); }

int SpecialPiecewise::segment_of(const LogReal& t) const {
  const int last = segments();
  for (int n = 1; n < last; ++n) {
    if (t <= alpha_[n]) return n;
  }
  return last;
}

LogReal SpecialPiecewise::f(const LogReal& t) const {
  int n = segment_of(t);
  return slope_[n] * (t + shift_[n]);
}

LogReal SpecialPiecewise::f_inverse(const LogReal& y) const {
  const int last = segments();
  int n = last;
  for (int m = 1; m < last; ++m) {
    if (y <= f_node_[m]) {
      n = m;
      break;
    }
  }
  return subtract_or(y / slope_[n], shift_[n], alpha_[n - 1]);
}

double SpecialPiecewise::continuity_defect(int n) const {
  if (n < 1 || n > depth_) throw InvalidArgument("continuity_defect index");
  LogReal left = slope_[n] * (alpha_[n] + shift_[n]);
  LogReal right = slope_[n + 1] * (alpha_[n] + shift_[n + 1]);
  return static_cast<double>(bmp::abs(left.log() - right.log()));
}

std::string SpecialPiecewise::serialize() const {
  std::ostringstream out;
  out << "c1=" << format_double(c1_) << "\n";
  out << "c2=" << format_double(c2_) << "\n";
  out << "depth=" << depth_ << "\n";
  for (size_t n = 0; n < alpha_.size(); ++n) out << "alpha_" << n << "=" << alpha_[n].to_string() << "\n";
  for (size_t n = 0; n < beta_.size(); ++n) out << "beta_" << n << "=" << beta_[n].to_string() << "\n";
  for (int n = 1; n <= segments(); ++n) {
    out << "A_" << n << "=" << slope_[n].to_string() << "\n";
    out << "B_" << n << "=" << intercept(n).to_string() << "\n";
  }
  return out.str();
}

SpecialPiecewise SpecialPiecewise::deserialize(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::vector<std::string> order;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidArgument("special: bad line '" + line + "'");
    std::string key = line.substr(0, eq);
    if (kv.count(key)) throw InvalidArgument("special: duplicate key " + key);
    kv[key] = line.substr(eq + 1);
    order.push_back(key);
  }
  for (const char* k : {"c1", "c2", "depth"}) {
    if (!kv.count(k)) throw InvalidArgument(std::string("special: missing key ") + k);
  }
  int depth = 0;
  try {
    depth = std::stoi(kv["depth"]);
  } catch (const std::exception&) {
    throw InvalidArgument("special: bad depth");
  }
  SpecialPiecewise s = build(parse_double(kv["c1"]), parse_double(kv["c2"]), depth);

  // Any table lines present must agree with the rebuilt table.
  std::istringstream again(s.serialize());
  std::map<std::string, std::string> expect;
  while (std::getline(again, line)) {
    auto eq = line.find('=');
    expect[line.substr(0, eq)] = line.substr(eq + 1);
  }
  for (const auto& key : order) {
    auto it = expect.find(key);
    if (it == expect.end()) throw InvalidArgument("special: unknown key " + key);
    if (key != "c1" && key != "c2" && key != "depth" && it->second != kv[key]) {
      throw InvalidArgument("special: table entry " + key + " does not match the parameters");
    }
  }
  return s;
}

// ---------------------------------------------------------------- gauge

OrliczFunction OrliczFunction::power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("power: p must be >= 1");
  return OrliczFunction(Variant(PowerGauge{p}));
}

OrliczFunction OrliczFunction::exp_power(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw InvalidArgument("exppower: q must be >= 1");
  return OrliczFunction(Variant(ExpPowerGauge{q}));
}

OrliczFunction OrliczFunction::log_square_exp() { return OrliczFunction(Variant(LogSquareExpGauge{})); }

OrliczFunction OrliczFunction::special(double c1, double c2, int depth) {
  return OrliczFunction(SpecialPiecewise::build(c1, c2, depth));
}

LogReal OrliczFunction::eval(const LogReal& x) const {
  if (x.is_zero()) return LogReal::zero();
  return std::visit(
      [&](const auto& g) -> LogReal {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, PowerGauge>) {
          return x.pow(g.p);
        } else if constexpr (std::is_same_v<G, ExpPowerGauge>) {
          LogReal t = x.pow(g.q);
          if (t.log() > bmp::log(Quad(DBL_MAX))) throw OverflowError("exppower: overflow");
          return expm1_of(t.to_quad());
        } else if constexpr (std::is_same_v<G, LogSquareExpGauge>) {
          Quad u = log1p_of(x);
          return expm1_of(u * u);
        } else {
          return g.f_inverse(x);
        }
      },
      v_);
}

LogReal OrliczFunction::eval_inv(const LogReal& y) const {
  if (y.is_zero()) return LogReal::zero();
  return std::visit(
      [&](const auto& g) -> LogReal {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, PowerGauge>) {
          return y.pow(Quad(1) / Quad(g.p));
        } else if constexpr (std::is_same_v<G, ExpPowerGauge>) {
          Quad l = log1p_of(y);
          return LogReal::from_log(bmp::log(l) / Quad(g.q));
        } else if constexpr (std::is_same_v<G, LogSquareExpGauge>) {
          return expm1_of(bmp::sqrt(log1p_of(y)));
        } else {
          return g.f(y);
        }
      },
      v_);
}

double OrliczFunction::operator()(double x) const {
  if (!(x >= 0.0)) throw InvalidArgument("Orlicz argument must be >= 0");
  if (const auto* g = std::get_if<PowerGauge>(&v_)) return std::pow(x, g->p);
  if (const auto* g = std::get_if<ExpPowerGauge>(&v_)) return std::expm1(std::pow(x, g->q));
  if (std::holds_alternative<LogSquareExpGauge>(v_)) {
    double u = std::log1p(x);
    return std::expm1(u * u);
  }
  if (std::isinf(x)) return x;
  try {
    return eval(LogReal(x)).to_double();
  } catch (const OverflowError&) {
    return DBL_MAX;
  }
}

double OrliczFunction::inverse(double y) const {
  if (!(y >= 0.0)) throw InvalidArgument("Orlicz inverse argument must be >= 0");
  if (const auto* g = std::get_if<PowerGauge>(&v_)) return std::pow(y, 1.0 / g->p);
  if (const auto* g = std::get_if<ExpPowerGauge>(&v_)) return std::pow(std::log1p(y), 1.0 / g->q);
  if (std::holds_alternative<LogSquareExpGauge>(v_)) return std::expm1(std::sqrt(std::log1p(y)));
  if (std::isinf(y)) return y;
  return eval_inv(LogReal(y)).to_double();
}

std::string OrliczFunction::spec() const {
  return std::visit(
      [](const auto& g) -> std::string {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, PowerGauge>) {
          return "power:" + format_double(g.p);
        } else if constexpr (std::is_same_v<G, ExpPowerGauge>) {
          return "exppower:" + format_double(g.q);
        } else if constexpr (std::is_same_v<G, LogSquareExpGauge>) {
          return "logsquare";
        } else {
          return "special:" + format_double(g.c1()) + "," + format_double(g.c2()) + "," +
                 std::to_string(g.depth());
        }
      },
      v_);
}

OrliczFunction parse_orlicz(std::string_view spec) {
  auto colon = spec.find(':');
  std::string_view name = spec.substr(0, colon);
  std::string_view args = colon == std::string_view::npos ? std::string_view() : spec.substr(colon + 1);
  if (name == "logsquare") {
    if (!args.empty()) throw InvalidArgument("logsquare takes no parameters");
    return OrliczFunction::log_square_exp();
  }
  if (args.empty()) throw InvalidArgument("unknown or incomplete psi spec '" + std::string(spec) + "'");
  if (name == "power") return OrliczFunction::power(parse_double(args));
  if (name == "exppower") return OrliczFunction::exp_power(parse_double(args));
  if (name == "special") {
    auto c = args.find(',');
    auto d = c == std::string_view::npos ? c : args.find(',', c + 1);
    if (d == std::string_view::npos) throw InvalidArgument("special needs c1,c2,depth");
    double c1 = parse_double(args.substr(0, c));
    double c2 = parse_double(args.substr(c + 1, d - c - 1));
    double depth = parse_double(args.substr(d + 1));
    if (depth != std::floor(depth)) throw InvalidArgument("special: depth must be an integer");
    return OrliczFunction::special(c1, c2, static_cast<int>(depth));
  }
  throw InvalidArgument("unknown psi '" + std::string(name) + "'");
}

}  // namespace oclab
