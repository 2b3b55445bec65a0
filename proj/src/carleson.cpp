#include "oclab/carleson.hpp"

#include "oclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace oclab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kEdge = 1e-9;  // angular band re-checked point by point
}  // namespace

WindowIndex::WindowIndex(const DiskMeasure& mu, double h) : mu_(&mu), h_(h) {
  if (mu.rotation_invariant()) return;
  std::vector<Atom> kept;
  if (const auto* s = std::get_if<DiskMeasure::Sampled>(&mu.variant())) {
    equal_weights_ = true;
    n_all_ = double(s->points.size());
    total_ = s->total;
    unit_ = s->points.empty() ? 0.0 : s->total / n_all_;
    monte_carlo_ = s->monte_carlo;
    for (Complex z : s->points) {
      if (!(std::abs(z) < 1.0 - h)) kept.push_back({z, unit_});
    }
  } else {
    for (const auto& a : std::get<DiskMeasure::Discrete>(mu.variant()).atoms) {
      if (!(std::abs(a.z) < 1.0 - h)) kept.push_back(a);
    }
  }
  std::vector<std::pair<double, std::size_t>> order(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) order[i] = {std::arg(kept[i].z), i};
  std::sort(order.begin(), order.end());
  theta_.reserve(kept.size());
  z_.reserve(kept.size());
  prefix_.assign(1, 0.0);
  for (const auto& [t, i] : order) {
    theta_.push_back(t);
    z_.push_back(kept[i].z);
    prefix_.push_back(prefix_.back() + (equal_weights_ ? 1.0 : kept[i].mass));
  }
}

MassEstimate WindowIndex::mass(const CarlesonWindow& w) const {
  if (mu_->rotation_invariant()) return mu_->window_mass_estimate(w);
  if (w.h > h_ * (1 + 1e-15)) throw InvalidArgument("WindowIndex: window larger than the indexed scale");

  // Accumulates the index range [i, j) with point checks inside the edge bands.
  double acc = 0.0;
  auto weight = [&](std::size_t i) { return prefix_[i + 1] - prefix_[i]; };
  auto range = [&](double lo, double hi, bool exact_inside) {
    auto first = std::lower_bound(theta_.begin(), theta_.end(), lo) - theta_.begin();
    auto last = std::upper_bound(theta_.begin(), theta_.end(), hi) - theta_.begin();
    for (auto i = first; i < last; ++i) {
      if (!exact_inside || theta_[i] < lo + 2 * kEdge || theta_[i] > hi - 2 * kEdge) {
        if (in_window(z_[i], w)) acc += weight(i);
      } else {
        // interior run: count the whole block at once
        auto stop = std::upper_bound(theta_.begin() + i, theta_.begin() + last, hi - 2 * kEdge) - theta_.begin();
        acc += prefix_[stop] - prefix_[i];
        i = stop - 1;
      }
    }
  };

  double half;
  bool exact_inside;
  if (w.kind == WindowKind::W) {
    half = kPi * w.h;
    // block counting is only valid when the radial cut matches the index
    exact_inside = w.h == h_;
  } else {
    half = w.h >= 1.0 ? kPi : std::asin(w.h) + kEdge;
    exact_inside = false;
  }
  if (half >= kPi) {
    for (std::size_t i = 0; i < z_.size(); ++i) {
      if (in_window(z_[i], w)) acc += weight(i);
    }
  } else {
    double c = std::arg(w.xi);
    double lo = c - half - kEdge, hi = c + half + kEdge;
    if (lo < -kPi) {
      range(-kPi, hi, exact_inside);
      range(lo + 2 * kPi, kPi, exact_inside);
    } else if (hi > kPi) {
      range(lo, kPi, exact_inside);
      range(-kPi, hi - 2 * kPi, exact_inside);
    } else {
      range(lo, hi, exact_inside);
    }
  }
  if (equal_weights_) {
    double p = n_all_ > 0 ? acc / n_all_ : 0.0;
    double err = monte_carlo_ ? total_ * std::sqrt(p * (1 - p) / n_all_) : 0.0;
    return {total_ * p, err};
  }
  return {acc, 0.0};
}

RhoEstimate carleson_rho(const DiskMeasure& mu, double h, const RhoOptions& opts) {
  if (!(h > 0.0) || h > 1.0) throw InvalidArgument("carleson_rho: h must lie in (0, 1]");
  if (opts.xi_grid < 8) throw InvalidArgument("carleson_rho: xi grid needs at least 8 points");
  if (mu.rotation_invariant()) {
    auto m = mu.window_mass_estimate({Complex(1.0, 0.0), h, opts.kind});
    return {m.mass, Complex(1.0, 0.0), m.stderr};
  }
  WindowIndex index(mu, h);
  RhoEstimate best;
  best.rho = -1;
  auto probe = [&](double theta) {
    CarlesonWindow w = CarlesonWindow::at_angle(theta, h, opts.kind);
    MassEstimate m = index.mass(w);
    if (m.mass > best.rho) best = {m.mass, w.xi, m.stderr};
    return m.mass;
  };
  const int M = opts.xi_grid;
  double best_theta = 0;
  for (int k = 0; k < M; ++k) {
    double theta = 2 * kPi * k / M;
    double before = best.rho;
    probe(theta);
    if (best.rho > before) best_theta = theta;
  }
  // golden-section search on the bracket around the grid argmax
  const double g = (std::sqrt(5.0) - 1) / 2;
  double a = best_theta - 2 * kPi / M, b = best_theta + 2 * kPi / M;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = probe(c), fd = probe(d);
  for (int i = 0; i < opts.refine_iters; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = probe(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = probe(d);
    }
  }
  return best;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi >= lo) || per_decade < 1) throw InvalidArgument("log_grid: bad range");
  int n = std::max(1, static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade)));
  std::vector<double> g(n + 1);
  for (int i = 0; i <= n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / n);
  g.front() = lo;
  g.back() = hi;
  if (lo == hi) g.resize(1);
  return g;
}

double k_mu2(const DiskMeasure& mu, const std::vector<double>& t_grid, const RhoOptions& opts) {
  double k = 0;
  for (double t : t_grid) k = std::max(k, carleson_rho(mu, t, opts).rho / (t * t));
  return k;
}

double k_mu2(const DiskMeasure& mu, double h, double t_min, int per_decade, const RhoOptions& opts) {
  return k_mu2(mu, log_grid(t_min, h, per_decade), opts);
}

}  // namespace oclab
