#include "doctest.h"

#include "oclab/errors.hpp"
#include "oclab/nevanlinna.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace oclab;
using Big = boost::multiprecision::cpp_bin_float_50;
using BigC = boost::multiprecision::cpp_complex_50;

namespace {

const double kPi = std::numbers::pi;

std::vector<AnalyticSymbol> families() {
  return {AnalyticSymbol::identity(), AnalyticSymbol::power(2), AnalyticSymbol::power(3),
          AnalyticSymbol::blaschke({{0, 0}, {0.5, 0}}),
          AnalyticSymbol::blaschke({{0.3, 0.1}, {-0.2, 0.6}, {0.1, -0.7}}, std::polar(1.0, 0.7)),
          AnalyticSymbol::cusp()};
}

// random targets, half of them drawn from the image so the cusp gets hits
std::vector<Complex> targets(const AnalyticSymbol& phi, int n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Complex> out;
  while (int(out.size()) < n) {
    Complex z = std::polar(std::sqrt(u(gen)), 2 * kPi * u(gen));
    Complex w = out.size() % 2 ? phi.eval(z) : std::polar(std::sqrt(u(gen)), 2 * kPi * u(gen));
    if (std::abs(w) < 0.999 && !is_singular_target(phi, w)) out.push_back(w);
  }
  return out;
}

BigC big_blaschke(const std::vector<Complex>& zeros, const BigC& z) {
  BigC v(1);
  for (Complex a : zeros) {
    BigC ab(a.real(), a.imag());
    BigC ac(a.real(), -a.imag());
    v *= (z - ab) / (BigC(1) - ac * z);
  }
  return v;
}

}  // namespace

TEST_CASE("preimages: closed forms") {
  auto p = preimages(AnalyticSymbol::power(2), 0.25);
  REQUIRE(p.roots.size() == 2);
  std::vector<double> re{p.roots[0].z.real(), p.roots[1].z.real()};
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(re[1] == doctest::Approx(0.5).epsilon(1e-15));
  for (const auto& r : p.roots) {
    CHECK(r.multiplicity == 1);
    CHECK(std::abs(r.z.imag()) < 1e-15);
  }
  CHECK(p.method == PreimageMethod::ClosedForm);

  Complex w(0.2, -0.4);
  auto q = preimages(AnalyticSymbol::identity(), w);
  REQUIRE(q.roots.size() == 1);
  CHECK(q.roots[0].z == w);

  CHECK(preimages(AnalyticSymbol::constant({0.1, 0}), 0.5).roots.empty());
  CHECK(preimages(AnalyticSymbol::constant({0.1, 0}), 0.1).singular);
}

TEST_CASE("preimages: Blaschke by polynomial roots") {
  const std::vector<Complex> zeros{{0, 0}, {0.5, 0}};
  auto b = AnalyticSymbol::blaschke(zeros);
  auto p = preimages(b, 0.0);
  CHECK(p.singular);  // B(0) = 0
  REQUIRE(p.roots.size() == 2);
  std::vector<double> re{p.roots[0].z.real(), p.roots[1].z.real()};
  std::sort(re.begin(), re.end());
  CHECK(std::abs(re[0]) < 1e-14);
  CHECK(re[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p.method == PreimageMethod::PolynomialRoots);

  // residuals against a 50-digit evaluation
  for (Complex w : {Complex(0.3, 0.2), Complex(-0.7, 0.1), Complex(0.05, -0.9)}) {
    auto s = preimages(b, w);
    CHECK(s.roots.size() == 2);
    for (const auto& r : s.roots) {
      BigC v = big_blaschke(zeros, BigC(r.z.real(), r.z.imag())) - BigC(w.real(), w.imag());
      CHECK(double(abs(v)) < 1e-14);
      CHECK(std::abs(r.z) < 1);
    }
  }

  // double zero gives one root of multiplicity 2
  auto d = preimages(AnalyticSymbol::blaschke({{0.5, 0}, {0.5, 0}}), 0.0);
  REQUIRE(d.roots.size() == 1);
  CHECK(d.roots[0].multiplicity == 2);
  CHECK(std::abs(d.roots[0].z - 0.5) < 1e-6);
}

TEST_CASE("preimages: cusp by chain inversion") {
  auto c = AnalyticSymbol::cusp();
  for (Complex z : {Complex(0.2, 0.3), Complex(-0.9, 0.01), Complex(0.5, -0.5), Complex(-0.999, 0)}) {
    Complex w = c.eval(z);
    auto p = preimages(c, w);
    REQUIRE(p.roots.size() == 1);
    CHECK(std::abs(p.roots[0].z - z) < 1e-9);
    CHECK(p.residual < 1e-12);
    CHECK(p.roots[0].log_inv_abs == doctest::Approx(-std::log(std::abs(z))).epsilon(1e-8));
  }
  // outside the horn region |φ + 1/2| < 1/2
  CHECK(preimages(c, Complex(0.3, 0)).roots.empty());
  CHECK(preimages(c, Complex(-0.5, 0.6)).roots.empty());
}

TEST_CASE("preimages: custom symbols by grid refinement") {
  CustomSymbol sq{"sq", [](Complex z) { return z * z; }, [](Complex z) { return 2.0 * z; }, true};
  auto c = AnalyticSymbol::custom(sq);
  for (Complex w : {Complex(0.25, 0), Complex(-0.3, 0.4), Complex(0.01, 0.6)}) {
    auto p = preimages(c, w);
    CHECK(p.method == PreimageMethod::GridRefinement);
    CHECK_FALSE(p.possible_missed_roots);
    CHECK(n_phi_of(p) == doctest::Approx(n_phi(AnalyticSymbol::power(2), w)).epsilon(1e-12));
  }
  // a root of multiplicity 3 at 0.4
  CustomSymbol cube{"cube", [](Complex z) { return std::pow((z - 0.4) / (1.0 - 0.4 * z), 3); },
                    [](Complex z) {
                      Complex m = (z - 0.4) / (1.0 - 0.4 * z);
                      return 3.0 * m * m * (1 - 0.16) / ((1.0 - 0.4 * z) * (1.0 - 0.4 * z));
                    },
                    true};
  auto p = preimages(AnalyticSymbol::custom(cube), 1e-9);
  int total = 0;
  for (const auto& r : p.roots) total += r.multiplicity;
  CHECK(total == 3);
  CHECK_FALSE(p.possible_missed_roots);
}

TEST_CASE("counting functions: examples") {
  auto p2 = AnalyticSymbol::power(2);
  CHECK(n_phi(p2, 0.25) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));
  CHECK(n_phi(p2, 0.25) == doctest::Approx(1.3862944).epsilon(1e-7));
  CHECK(n_phi2(p2, 0.25) == doctest::Approx(2 * std::log(2.0) * std::log(2.0)).epsilon(1e-14));
  CHECK(n_phi2(p2, 0.25) == doctest::Approx(0.9609060).epsilon(1e-7));
  CHECK(n_phi_r(p2, 0.6, 0.25) == doctest::Approx(2 * std::log(1.2)).epsilon(1e-14));
  CHECK(n_phi_r(p2, 0.4, 0.25) == 0.0);

  auto id = AnalyticSymbol::identity();
  Complex w(0.3, 0.4);
  CHECK(n_phi(id, w) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(n_phi2(id, w) == doctest::Approx(std::log(2.0) * std::log(2.0)).epsilon(1e-14));

  CHECK(std::isinf(n_phi(id, 0.0)));
  CHECK(std::isinf(n_phi2(p2, 0.0, CountingMode::Integral)));
  CHECK(n_phi(AnalyticSymbol::constant({0.2, 0}), 0.5) == 0.0);
  CHECK_THROWS_AS(n_phi(id, 1.0), InvalidArgument);
  CHECK_THROWS_AS(n_phi_r(id, 0.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(preimages(id, 0.5, 1e-13), InvalidArgument);
}

TEST_CASE("counting functions: integral mode matches the direct sum") {
  auto p2 = AnalyticSymbol::power(2);
  for (double m : {0.1, 0.5, 0.9}) {
    for (double th : {0.0, 1.0, 2.5}) {
      Complex w = std::polar(m, th);
      CHECK(std::abs(n_phi2(p2, w, CountingMode::Integral) - n_phi2(p2, w)) < 1e-6);
    }
  }
  for (const auto& phi : families()) {
    for (Complex w : targets(phi, 40, 11)) {
      double d = n_phi2(phi, w), i = n_phi2(phi, w, CountingMode::Integral);
      CHECK(std::abs(d - i) < 1e-6);
    }
  }
}

TEST_CASE("counting functions: invariants") {
  for (const auto& phi : families()) {
    const Complex w0 = phi.eval(0.0);
    for (Complex w : targets(phi, 200, 5)) {
      auto p = preimages(phi, w);
      double n1 = n_phi_of(p), n2 = n_phi2_of(p);
      CHECK(n2 <= n1 * n1 * (1 + 1e-12));
      // Schwarz exclusion
      double u0 = std::abs((w0 - w) / (1.0 - std::conj(w0) * w));
      for (const auto& r : p.roots) {
        CHECK(std::abs(r.z) >= u0 * (1 - 1e-9));
        CHECK(std::abs(phi.eval(r.z) - w) <= std::max(p.residual, 1e-12));
      }
      // N(r, w) nondecreasing in r, N(1, w) = N(w)
      double prev = 0;
      for (int k = 1; k <= 50; ++k) {
        double v = n_phi_r_of(p, k / 50.0);
        CHECK(v >= prev);
        prev = v;
      }
      CHECK(prev == doctest::Approx(n1).epsilon(1e-12));
    }
  }
}

TEST_CASE("nu2 examples") {
  for (double h : {0.05, 0.1, 0.3, 0.6}) {
    double l = std::log(1 / (1 - h));
    CHECK(nu2(AnalyticSymbol::identity(), h).value == doctest::Approx(l * l).epsilon(1e-12));
    CHECK(nu2(AnalyticSymbol::power(2), h).value == doctest::Approx(0.5 * l * l).epsilon(1e-12));
    CHECK(nu2(AnalyticSymbol::constant(0.0), h).value == 0.0);
  }
  CHECK(std::isinf(nu2(AnalyticSymbol::constant({0.95, 0}), 0.1).value));
  CHECK_THROWS_AS(nu2(AnalyticSymbol::identity(), 1.0), InvalidArgument);
  // cusp: the horn along the negative axis carries the sup
  auto c = nu2(AnalyticSymbol::cusp(), 0.2);
  CHECK(c.value > 0);
  CHECK(std::abs(std::arg(c.w_argmax)) > 3.0);
}

TEST_CASE("equivalence report") {
  const std::vector<double> hs{0.05, 0.1, 0.2, 0.3, 0.5};
  EquivalenceOptions opts;
  opts.area_samples = 200000;
  auto id = equivalence_report(AnalyticSymbol::identity(), hs, opts);
  for (const auto& row : id) {
    double l = std::log(1 / (1 - row.h));
    CHECK(row.nu2 == doctest::Approx(l * l).epsilon(1e-12));
    CHECK(row.rho2 == doctest::Approx(2 * row.h * row.h - row.h * row.h * row.h).epsilon(0.15));
    CHECK(row.ratio_nu_rho2 >= 0.3);
    CHECK(row.ratio_nu_rho2 <= 3);
  }
  auto p2 = equivalence_report(AnalyticSymbol::power(2), hs, opts);
  for (const auto& row : p2) {
    CHECK(row.ratio_nu_rho2 >= 0.1);
    CHECK(row.ratio_nu_rho2 <= 10);
  }
  auto c0 = equivalence_report(AnalyticSymbol::constant(0.0), hs, opts);
  for (const auto& row : c0) {
    CHECK(row.nu2 == 0.0);
    CHECK(row.rho2 == 0.0);
    CHECK(row.rho1 == 0.0);
    CHECK(row.ratio_nu_rho2 == 0.0);
    CHECK(row.ratio_rho2_rho1 == 0.0);
  }
}

TEST_CASE("two-sided equivalence with one fitted constant") {
  EquivalenceOptions opts;
  opts.area_samples = 200000;
  const std::vector<double> hs{0.05, 0.1, 0.2, 0.3};
  for (const auto& phi : {AnalyticSymbol::identity(), AnalyticSymbol::power(2),
                          AnalyticSymbol::blaschke({{0.3, 0.1}, {-0.2, 0.6}})}) {
    auto fit = fit_equivalence_constant(phi, hs, opts);
    CAPTURE(phi.spec());
    CHECK(fit.found);
    CHECK(fit.c <= 100);
  }
  // the cusp's area pull-back near -1 is only resolved by sampling at the larger scales
  auto fit = fit_equivalence_constant(AnalyticSymbol::cusp(), {0.2, 0.25, 0.3}, opts);
  CHECK(fit.found);
  CHECK(fit.c <= 100);
}
