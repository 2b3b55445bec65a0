#include "oclab/criteria.hpp"

#include "oclab/errors.hpp"
#include "oclab/pullback.hpp"
#include "oclab/text.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace oclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// num/den for log-domain values; +inf when den is zero
double quotient(const LogReal& num, const LogReal& den) {
  if (den.is_zero()) return kInf;
  if (num.is_zero()) return 0.0;
  return double(exp(num.log() - den.log()));
}

LogReal inv_of(const OrliczFunction& psi, const LogReal& y) { return psi.eval_inv(y); }

std::string log_text(const LogReal& v) { return v.is_zero() ? "-inf" : format_double(v.log_double()); }

void check_h_grid(const std::vector<double>& h_grid) {
  if (h_grid.empty()) throw InvalidArgument("criteria: empty h grid");
  for (double h : h_grid)
    if (!(h > 0 && h <= 1)) throw InvalidArgument("criteria: h must lie in (0, 1]");
}

}  // namespace

std::string to_string(CurveSource s) { return s == CurveSource::Measured ? "measured" : "model"; }

ExpFit fit_exponential(const std::vector<double>& h, const std::vector<double>& rho) {
  if (h.size() != rho.size() || h.size() < 2) throw InvalidArgument("fit_exponential: need two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(rho[i] > 0) || !(h[i] > 0)) throw InvalidArgument("fit_exponential: values must be positive");
    double x = 1 / h[i], y = std::log(rho[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  double den = n * sxx - sx * sx;
  if (den == 0) throw InvalidArgument("fit_exponential: h values must differ");
  double slope = (n * sxy - sx * sy) / den;
  ExpFit fit{(sy - slope * sx) / n, -slope, 0};
  double ss = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    double r = std::log(rho[i]) - (fit.log_c - fit.rate / h[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

RhoSource RhoSource::measured(std::shared_ptr<const DiskMeasure> mu, RhoOptions opts) {
  if (!mu) throw InvalidArgument("RhoSource: null measure");
  RhoSource s;
  s.kind_ = CurveSource::Measured;
  s.mu_ = std::move(mu);
  s.opts_ = opts;
  return s;
}

RhoSource RhoSource::model(double c, double gamma) {
  if (!(c > 0) || !(gamma > 0)) throw InvalidArgument("RhoSource: model needs c > 0 and gamma > 0");
  RhoSource s;
  s.kind_ = CurveSource::Model;
  s.c_ = c;
  s.gamma_ = gamma;
  return s;
}

std::pair<LogReal, double> RhoSource::at(double h) const {
  if (kind_ == CurveSource::Model) return {LogReal::from_log(Quad(std::log(c_)) - Quad(gamma_) / Quad(h)), 0.0};
  RhoEstimate e = carleson_rho(*mu_, h, opts_);
  return {e.rho > 0 ? LogReal(e.rho) : LogReal::zero(), e.stderr};
}

LogReal RhoSource::at_inverse(const LogReal& x) const {
  if (kind_ != CurveSource::Model) throw InvalidArgument("RhoSource: at_inverse needs a model source");
  return LogReal::from_log(Quad(std::log(c_)) - Quad(gamma_) * x.to_quad());
}

CriterionCurve boundedness_ratios(const OrliczFunction& psi1, const OrliczFunction& psi2, const DiskMeasure& mu,
                                  const std::vector<double>& h_grid, double t_min_factor, const RhoOptions& opts) {
  check_h_grid(h_grid);
  if (!(t_min_factor > 0 && t_min_factor < 1)) throw InvalidArgument("boundedness_ratios: t_min_factor in (0, 1)");
  CriterionCurve curve;
  curve.source = CurveSource::Measured;
  for (double h : h_grid) {
    CriterionPoint p;
    p.h = h;
    p.log_h = std::log(h);
    RhoEstimate e = carleson_rho(mu, h, opts);
    p.rho = e.rho > 0 ? LogReal(e.rho) : LogReal::zero();
    p.stderr = e.stderr;
    const LogReal top = inv_of(psi1, LogReal(1 / (h * h)));
    p.ratio = e.rho > 0 ? quotient(top, inv_of(psi2, LogReal(1 / e.rho))) : kInf;
    double k = k_mu2(mu, h, t_min_factor * h, 40, opts);
    p.ratio2 = k > 0 ? quotient(top, inv_of(psi2, LogReal(1 / (h * h * k)))) : kInf;
    curve.points.push_back(p);
  }
  return curve;
}

namespace {

CriterionCurve compactness_curve(const OrliczFunction& psi, const RhoSource& src, const std::vector<double>& h_grid,
                                 int d) {
  check_h_grid(h_grid);
  CriterionCurve curve;
  curve.source = src.kind();
  std::vector<double> hs, rs;
  for (double h : h_grid) {
    CriterionPoint p;
    p.h = h;
    p.log_h = std::log(h);
    auto [rho, se] = src.at(h);
    p.rho = rho;
    p.stderr = se;
    p.ratio = rho.is_zero() ? kInf : quotient(inv_of(psi, LogReal(std::pow(h, -d))), inv_of(psi, LogReal::one() / rho));
    curve.points.push_back(p);
    if (!rho.is_zero()) {
      hs.push_back(h);
      rs.push_back(rho.to_double());
    }
  }
  if (src.kind() == CurveSource::Measured && hs.size() == h_grid.size() && hs.size() >= 2) {
    curve.fit = fit_exponential(hs, rs);
  }
  return curve;
}

}  // namespace

CriterionCurve bergman_compactness_ratio(const OrliczFunction& psi, const RhoSource& rho2,
                                         const std::vector<double>& h_grid) {
  return compactness_curve(psi, rho2, h_grid, 2);
}

CriterionCurve hardy_compactness_ratio(const OrliczFunction& psi, const RhoSource& rho1,
                                       const std::vector<double>& h_grid) {
  return compactness_curve(psi, rho1, h_grid, 1);
}

double bergman_model_ratio(const OrliczFunction& psi, const RhoSource& model, const LogReal& x) {
  return quotient(inv_of(psi, x * x), inv_of(psi, LogReal::one() / model.at_inverse(x)));
}

double hardy_model_ratio(const OrliczFunction& psi, const RhoSource& model, const LogReal& x) {
  return quotient(inv_of(psi, x), inv_of(psi, LogReal::one() / model.at_inverse(x)));
}

double corollary_quotient(const OrliczFunction& psi, const AnalyticSymbol& phi, Complex z) {
  const double az = std::abs(z), aw = std::abs(phi.eval(z));
  if (!(az < 1) || !(aw < 1)) throw InvalidArgument("corollary_quotient: points must lie in the open disk");
  LogReal num = inv_of(psi, LogReal(1 / ((1 - aw) * (1 - aw))));
  LogReal den = inv_of(psi, LogReal(1 / ((1 - az) * (1 - az))));
  return quotient(num, den);
}

double cusp_window_mass(const CuspSymbol& c, double t) {
  if (!(t > 0 && t <= 1)) throw InvalidArgument("cusp_window_mass: t must lie in (0, 1]");
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  // |φ + 1| < t  <=>  |φ₂| > 1/t  <=>  |u| < R(θ) for u = f(z) = |u| e^{iθ}
  auto radius = [&](double theta) {
    double s = 1 / (t * t) - 4 * theta * theta / (kPi * kPi);
    if (s <= 0) return 1.0;
    return std::min(1.0, std::exp(kPi / 2 * (1 - std::sqrt(s))));
  };
  auto ring = [&](double theta) {
    // ρ = R v keeps the integrand O(1) on [0, 1] however small R is
    double r_max = radius(theta);
    double inner = GK::integrate(
        [&](double v) { return std::norm(c.f_inverse_derivative(std::polar(r_max * v, theta))) * v; }, 0.0, 1.0, 15,
        1e-11);
    return inner * r_max * r_max;
  };
  // symmetric in θ by conjugation
  return 2 * GK::integrate(ring, 0.0, kPi / 2, 15, 1e-10) / kPi;
}

ContractivityReport contractivity(const AnalyticSymbol& phi, const std::vector<double>& h_grid,
                                  const std::vector<double>& eps_grid, const ContractivityOptions& opts) {
  check_h_grid(h_grid);
  for (double e : eps_grid)
    if (!(e > 0 && e <= 1)) throw InvalidArgument("contractivity: eps must lie in (0, 1]");
  ContractivityReport rep;
  rep.symbol = phi.spec();
  const CuspSymbol* cusp = std::get_if<CuspSymbol>(&phi.variant());
  rep.xi = cusp ? Complex(-1.0, 0.0) : Complex(1.0, 0.0);
  std::optional<DiskMeasure> area;
  if (!cusp) area = pullback_area(phi, opts.samples, opts.seed);
  auto mass = [&](double t) {
    if (cusp) return cusp_window_mass(*cusp, t);
    return area->window_mass({rep.xi, t, WindowKind::S});
  };
  for (double h : h_grid) {
    const double big = mass(h);
    for (double e : eps_grid) {
      ContractivityRow row{h, e, mass(e * h), big, 0};
      row.ratio = row.mass_small == 0 ? 0.0 : (big == 0 ? kInf : row.mass_small / (e * e * big));
      rep.c_fit = std::max(rep.c_fit, row.ratio);
      rep.rows.push_back(row);
    }
  }
  return rep;
}

std::string to_csv(const ContractivityReport& r) {
  std::ostringstream os;
  os << "symbol,xi_re,xi_im,h,eps,mass_small,mass_h,ratio\n";
  for (const auto& row : r.rows) {
    os << r.symbol << ',' << format_double(r.xi.real()) << ',' << format_double(r.xi.imag()) << ','
       << format_double(row.h) << ',' << format_double(row.eps) << ',' << format_double(row.mass_small) << ','
       << format_double(row.mass_h) << ',' << format_double(row.ratio) << '\n';
  }
  return os.str();
}

std::string to_string(SeparationVerdict v) {
  switch (v) {
    case SeparationVerdict::HardyCompactBergmanNot: return "HARDY_COMPACT_BERGMAN_NOT";
    case SeparationVerdict::Inconclusive: return "INCONCLUSIVE";
    case SeparationVerdict::NoSeparation: return "NO_SEPARATION";
    case SeparationVerdict::InvalidParameters: return "INVALID_PARAMETERS";
  }
  return "?";
}

SeparationReport separation_experiment(const SeparationParams& p) {
  SeparationReport rep;
  auto invalid = [&](std::string why) {
    rep.verdict = SeparationVerdict::InvalidParameters;
    rep.reason = std::move(why);
    return rep;
  };
  if (!(p.c1 > 0) || !(p.c2 > p.c1)) return invalid("need 0 < c1 < c2 (the construction needs c2/c1 > 1)");
  if (p.h_grid.size() < 2) return invalid("measured regime needs at least two h values");
  for (double h : p.h_grid)
    if (!(h > 0 && h < 1)) return invalid("h values must lie in (0, 1)");
  std::optional<SpecialPiecewise> special;
  try {
    special = SpecialPiecewise::build(p.c1, p.c2, p.depth);
  } catch (const std::exception& e) {
    return invalid(std::string("special Orlicz construction failed: ") + e.what());
  }
  const OrliczFunction psi = p.psi_override ? *p.psi_override : OrliczFunction(*special);

  // measured regime
  const AnalyticSymbol cusp = AnalyticSymbol::cusp();
  const DiskMeasure area = pullback_area(cusp, p.samples, p.seed);
  const DiskMeasure boundary = pullback_boundary(cusp, p.boundary_samples);
  std::vector<double> r1s, r2s;
  std::string weak;
  rep.bergman_constant = kInf;
  for (double h : p.h_grid) {
    SeparationRow row;
    row.h = h;
    row.log_h = std::log(h);
    RhoEstimate e1 = carleson_rho(boundary, h), e2 = carleson_rho(area, h);
    row.rho1 = e1.rho > 0 ? LogReal(e1.rho) : LogReal::zero();
    row.rho2 = e2.rho > 0 ? LogReal(e2.rho) : LogReal::zero();
    row.rho2_stderr = e2.stderr;
    row.hardy_ratio = e1.rho > 0 ? quotient(inv_of(psi, LogReal(1 / h)), inv_of(psi, LogReal(1 / e1.rho))) : kInf;
    row.bergman_ratio =
        e2.rho > 0 ? quotient(inv_of(psi, LogReal(1 / (h * h))), inv_of(psi, LogReal(1 / e2.rho))) : kInf;
    if (weak.empty()) {
      if (!(e1.rho > 0)) weak = "measured rho1 vanishes at h=" + format_double(h);
      else if (!(e2.rho > 0) || e2.stderr > p.max_rel_stderr * e2.rho)
        weak = "measured rho2 unresolved at h=" + format_double(h);
    }
    rep.hardy_constant = std::max(rep.hardy_constant, e1.rho * std::exp(p.c1 / h));
    rep.bergman_constant = std::min(rep.bergman_constant, e2.rho * std::exp(p.c2 / h));
    r1s.push_back(e1.rho);
    r2s.push_back(e2.rho);
    rep.rows.push_back(row);
  }
  if (!weak.empty()) {
    rep.verdict = SeparationVerdict::Inconclusive;
    rep.reason = weak;
    return rep;
  }
  rep.fit_rho1 = fit_exponential(p.h_grid, r1s);
  rep.fit_rho2 = fit_exponential(p.h_grid, r2s);
  rep.bounds_ok = rep.hardy_constant <= p.hardy_bound && rep.bergman_constant >= p.bergman_bound;

  // model regime at the tower nodes: x = α_n for Hardy, x = √α_n for Bergman
  const RhoSource m1 = RhoSource::model(1, p.c1), m2 = RhoSource::model(1, p.c2);
  const auto& alpha = special->alpha();
  const double split = (p.c2 / p.c1) * (p.c2 / p.c1);
  auto model_row = [&](const LogReal& x, int n) {
    SeparationRow row;
    row.source = CurveSource::Model;
    row.log_h = -x.log_double();
    row.h = std::exp(row.log_h);
    row.rho1 = m1.at_inverse(x);
    row.rho2 = m2.at_inverse(x);
    row.hardy_ratio = hardy_model_ratio(psi, m1, x);
    row.bergman_ratio = bergman_model_ratio(psi, m2, x);
    row.tower_index = n;
    rep.rows.push_back(row);
    return row;
  };
  for (int n = 1; n <= special->depth(); ++n) {
    SeparationRow hr = model_row(alpha[n], n);
    if (n == special->depth()) rep.deepest_hardy_ratio = hr.hardy_ratio;
    if (alpha[n] > LogReal(split)) rep.bergman_tower_ratios.push_back(model_row(alpha[n].sqrt(), n).bergman_ratio);
  }
  rep.hardy_ok = rep.deepest_hardy_ratio < p.hardy_limit;
  double top = 0;
  for (double r : rep.bergman_tower_ratios) top = std::max(top, r);
  rep.bergman_ok = !rep.bergman_tower_ratios.empty() && top >= 1.0 / 3 - 1e-9;

  if (rep.bounds_ok && rep.hardy_ok && rep.bergman_ok) {
    rep.verdict = SeparationVerdict::HardyCompactBergmanNot;
    rep.reason = "all checks passed";
  } else if (rep.hardy_ok && !rep.bergman_ok) {
    rep.verdict = SeparationVerdict::NoSeparation;
    rep.reason = rep.bergman_tower_ratios.empty() ? "no tower node past the case split"
                                                  : "model Bergman ratio stays below 1/3 at the tower nodes";
  } else {
    rep.verdict = SeparationVerdict::Inconclusive;
    rep.reason = !rep.bounds_ok ? "measured decay bounds not met"
                                : "model Hardy ratio not below the limit at the deepest tower node";
  }
  return rep;
}

std::string to_csv(const SeparationReport& r) {
  std::ostringstream os;
  os << "h,log_h,rho1,log_rho1,rho2,log_rho2,rho2_stderr,hardy_ratio,bergman_ratio,source,tower_index\n";
  for (const auto& row : r.rows) {
    os << format_double(row.h) << ',' << format_double(row.log_h) << ',' << format_double(row.rho1.to_double())
       << ',' << log_text(row.rho1) << ',' << format_double(row.rho2.to_double()) << ',' << log_text(row.rho2)
       << ',' << format_double(row.rho2_stderr) << ',' << format_double(row.hardy_ratio) << ','
       << format_double(row.bergman_ratio) << ',' << to_string(row.source) << ',' << row.tower_index << '\n';
  }
  return os.str();
}

std::string verdict_text(const SeparationReport& r) {
  std::ostringstream os;
  os << to_string(r.verdict) << '\n';
  os << "reason: " << r.reason << '\n';
  if (r.verdict == SeparationVerdict::InvalidParameters) return os.str();
  os << "measured regime: cusp pull-backs on the h grid\n";
  os << "model regime: rho1 = exp(-c1/h), rho2 = exp(-c2/h) at h = 1/x, x on the tower nodes\n";
  os << "hardy_constant: " << format_double(r.hardy_constant) << '\n';
  os << "bergman_constant: " << format_double(r.bergman_constant) << '\n';
  os << "fit_rho1: log_c=" << format_double(r.fit_rho1.log_c) << " rate=" << format_double(r.fit_rho1.rate)
     << " residual=" << format_double(r.fit_rho1.residual) << '\n';
  os << "fit_rho2: log_c=" << format_double(r.fit_rho2.log_c) << " rate=" << format_double(r.fit_rho2.rate)
     << " residual=" << format_double(r.fit_rho2.residual) << '\n';
  os << "deepest_hardy_ratio: " << format_double(r.deepest_hardy_ratio) << '\n';
  os << "bergman_tower_ratios:";
  for (double b : r.bergman_tower_ratios) os << ' ' << format_double(b);
  os << '\n';
  return os.str();
}

std::string to_csv(const CriterionCurve& c) {
  std::ostringstream os;
  os << "h,log_h,rho,log_rho,stderr,ratio,ratio2,source\n";
  for (const auto& p : c.points) {
    os << format_double(p.h) << ',' << format_double(p.log_h) << ',' << format_double(p.rho.to_double()) << ','
       << log_text(p.rho) << ',' << format_double(p.stderr) << ',' << format_double(p.ratio) << ','
       << format_double(p.ratio2) << ',' << to_string(c.source) << '\n';
  }
  return os.str();
}

}  // namespace oclab
