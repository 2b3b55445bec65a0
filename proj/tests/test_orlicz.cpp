#include "doctest.h"

#include "oclab/errors.hpp"
#include "oclab/luxemburg.hpp"
#include "oclab/orlicz.hpp"
#include "oclab/probe.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace oclab;
using Big = boost::multiprecision::cpp_bin_float_50;
namespace bmp = boost::multiprecision;

namespace {

const double kPi = std::numbers::pi;

// Straight recursion in 50 digits; only usable while every value fits.
struct OracleSpecial {
  std::vector<Big> alpha, beta, A, B;
  OracleSpecial(Big c1, Big c2, int depth) {
    alpha = {Big(0), Big(1)};
    beta = {Big(0.5)};
    A = {Big(0), Big(1)};
    B = {Big(0), Big(0)};
    for (int n = 1; n <= depth; ++n) {
      beta.push_back((bmp::exp(c2 * bmp::sqrt(alpha[n])) - 3 * alpha[n]) / 2);
      alpha.push_back(bmp::exp(c1 * alpha[n]));
      Big a_next = A[n] * (alpha[n] + B[n] / A[n]) / (alpha[n] + beta[n]);
      A.push_back(a_next);
      B.push_back(beta[n] * a_next);
    }
  }
};

double rel(const LogReal& got, const Big& want) {
  return std::abs(double(bmp::exp(Big(got.log().str(40)) - bmp::log(want)) - 1));
}

}  // namespace

TEST_CASE("LogReal arithmetic") {
  SUBCASE("mul adds logs") {
    LogReal a = LogReal::from_log(700.0);
    CHECK((a * a).log() == Quad(1400));
  }
  SUBCASE("x + x = 2x") {
    LogReal x = LogReal::from_log(-3.25);
    CHECK(double(bmp::abs((x + x).log() - (x.log() + bmp::log(Quad(2))))) < 1e-30);
  }
  SUBCASE("exp_of(e^20)") {
    // oracle: 50-digit e^20
    Big want = bmp::exp(Big(20));
    LogReal got = LogReal::from_log(20.0).exp_of();
    CHECK(std::abs(double(Big(got.log().str(40)) - want)) < 1e-20);
    CHECK(got.log_double() == doctest::Approx(485165195.40979028).epsilon(1e-15));
  }
  SUBCASE("zero variant") {
    LogReal z;
    CHECK(z.is_zero());
    CHECK(z < LogReal(1e-300));
    CHECK((z + LogReal(2.0)) == LogReal(2.0));
    CHECK((z * LogReal(2.0)).is_zero());
    CHECK(z.to_double() == 0.0);
    CHECK_THROWS_AS(z.log(), NumericError);
    CHECK_THROWS_AS(LogReal(2.0) / z, NumericError);
  }
  SUBCASE("subtraction") {
    CHECK((LogReal(5.0) - LogReal(3.0)).to_double() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK((LogReal(5.0) - LogReal(5.0)).is_zero());
    CHECK_THROWS_AS(LogReal(3.0) - LogReal(5.0), NumericError);
  }
  SUBCASE("overflow is explicit") {
    CHECK_THROWS_AS(LogReal::from_log(1000.0).exp_of(), OverflowError);
    LogReal big = LogReal::from_log(1e308);
    CHECK_THROWS_AS(big * big, OverflowError);
    CHECK(big.to_double() == DBL_MAX);
  }
  SUBCASE("string round trip") {
    LogReal x = LogReal::from_log(Quad(1) / 3);
    CHECK(LogReal::parse(x.to_string()) == x);
    CHECK(LogReal::parse("0").is_zero());
    CHECK_THROWS_AS(LogReal::parse("abc"), InvalidArgument);
  }
}

TEST_CASE("LogReal properties on random operands") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> logs(-800.0, 800.0);
  for (int i = 0; i < 2000; ++i) {
    LogReal a = LogReal::from_log(logs(rng)), b = LogReal::from_log(logs(rng));
    LogReal c = LogReal::from_log(logs(rng));
    CHECK((a + b) == (b + a));
    // monotone: b <= c implies a + b <= a + c
    if (b <= c) CHECK((a + b) <= (a + c));
    CHECK(((a < b) == (a.log() < b.log())));
    // add against a 50-digit oracle
    Big la(a.log().str(40)), lb(b.log().str(40));
    Big want = (la > lb ? la : lb) + bmp::log1p(bmp::exp(-bmp::abs(la - lb)));
    CHECK(std::abs(double(Big((a + b).log().str(40)) - want)) <= 1e-14 * std::max(1.0, std::abs(double(want))));
    CHECK(double(bmp::abs(((a * b) / b).log() - a.log())) <= 1e-30 * std::max(1.0, std::abs(double(a.log()))));
  }
}

TEST_CASE("special construction, reference constants") {
  const double c1 = kPi / 4, c2 = kPi;
  auto s = SpecialPiecewise::build(c1, c2, 2);
  OracleSpecial o(Big(c1), Big(c2), 4);

  CHECK(s.slope(1) == LogReal::one());
  CHECK(s.intercept(1).is_zero());
  CHECK(s.beta()[0].to_double() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rel(s.alpha()[2], o.alpha[2]) < 1e-15);
  CHECK(rel(s.beta()[1], o.beta[1]) < 1e-14);
  CHECK(rel(s.slope(2), o.A[2]) < 1e-14);
  CHECK(rel(s.intercept(2), o.B[2]) < 1e-14);
  CHECK(s.slope(2).to_double() == doctest::Approx(0.0903314).epsilon(1e-6));
  CHECK(s.intercept(2).to_double() == doctest::Approx(0.9096686).epsilon(1e-6));
  CHECK(s.beta()[1].to_double() == doctest::Approx(10.0703465).epsilon(1e-7));
  CHECK(s.alpha()[2].to_double() == doctest::Approx(2.1932800).epsilon(1e-7));

  OrliczFunction psi(s);
  CHECK(psi.eval(LogReal::one()) == LogReal::one());
  Big f2 = o.A[2] * o.alpha[2] + o.B[2];
  CHECK(rel(psi.eval_inv(s.alpha()[2]), f2) < 1e-14);
  CHECK(psi.eval_inv(s.alpha()[2]).to_double() == doctest::Approx(1.1077908).epsilon(1e-7));

  auto d4 = SpecialPiecewise::build(c1, c2, 4);
  for (int n = 1; n <= 5; ++n) CHECK(rel(d4.slope(n), o.A[n]) < 1e-12);
  for (int n = 1; n <= 4; ++n) CHECK(rel(d4.beta()[n], o.beta[n]) < 1e-12);
}

TEST_CASE("special construction invariants at depth 5") {
  auto s = SpecialPiecewise::build(kPi / 4, kPi, 5);
  REQUIRE(s.segments() == 6);
  for (int n = 1; n < s.segments(); ++n) CHECK(s.slope(n + 1) < s.slope(n));
  for (int n = 1; n <= 5; ++n) CHECK(s.continuity_defect(n) <= 1e-12);
  // log β_5 is about c2 √α_5 - ln 2 with √α_5 = e^{c1 α_4 / 2}
  // the oracle uses the exact binary values of the double inputs
  Big c1(kPi / 4), c2(kPi);
  Big la4 = Big(s.alpha()[4].log().str(40));
  Big root5 = bmp::exp(bmp::exp(la4) * c1 / 2);
  Big want = c2 * root5 - bmp::log(Big(2));
  CHECK(std::abs(double(Big(s.beta()[5].log().str(40)) - want)) < 1e-6);
  CHECK(double(s.beta()[5].log()) == doctest::Approx(2.2e14).epsilon(0.05));
}

TEST_CASE("special 1/3 identity above the threshold") {
  const double c1 = kPi / 4, c2 = kPi;
  auto s = SpecialPiecewise::build(c1, c2, 5);
  const double threshold = (c2 / c1) * (c2 / c1);
  for (int n = 1; n <= 5; ++n) {
    if (!(s.alpha()[n] > LogReal(threshold))) continue;
    LogReal e = (LogReal(c2) * s.alpha()[n].sqrt()).exp_of();
    REQUIRE(s.alpha()[n] < e);
    REQUIRE(e < s.alpha()[n + 1]);
    LogReal ratio = s.f(s.alpha()[n]) / s.f(e);
    CHECK(std::abs(double(ratio.log() + bmp::log(Quad(3)))) <= 1e-9);
  }
  CHECK(s.alpha()[4] > LogReal(threshold));
  CHECK(s.alpha()[3] < LogReal(threshold));
}

TEST_CASE("special ratio f(x)/f(e^{c1 x}) shrinks segment by segment") {
  const double c1 = kPi / 4, c2 = kPi;
  auto s = SpecialPiecewise::build(c1, c2, 5);
  std::vector<double> seg_max;
  for (int n = 2; n <= 5; ++n) {
    double lo = double(s.alpha()[n - 1].log()), hi = double(s.alpha()[n].log());
    double m = 0;
    for (int i = 0; i <= 200; ++i) {
      LogReal x = LogReal::from_log(lo + (hi - lo) * i / 200.0);
      LogReal y = LogReal::from_log(Quad(c1) * x.to_quad());
      m = std::max(m, (s.f(x) / s.f(y)).to_double());
    }
    seg_max.push_back(m);
  }
  MESSAGE("per-segment max: " << seg_max[0] << " " << seg_max[1] << " " << seg_max[2] << " " << seg_max[3]);
  // past the case split (segments 3..5) the maxima decrease, the last below 0.05
  CHECK(seg_max[2] < seg_max[1]);
  CHECK(seg_max[3] < seg_max[2]);
  CHECK(seg_max[3] < 0.05);
}

TEST_CASE("special construction errors") {
  CHECK_THROWS_AS(SpecialPiecewise::build(1.0, kPi, 2), InvalidArgument);
  CHECK_THROWS_AS(SpecialPiecewise::build(0.0, kPi, 2), InvalidArgument);
  CHECK_THROWS_AS(SpecialPiecewise::build(kPi / 4, 3.0, 2), InvalidArgument);
  CHECK_THROWS_AS(SpecialPiecewise::build(kPi / 4, kPi, 0), InvalidArgument);
  try {
    SpecialPiecewise::build(kPi / 4, kPi, 6);
    FAIL("depth 6 must overflow");
  } catch (const OverflowError& e) {
    CHECK(e.index() == 6);
  }
  // decimal literals slightly above pi/4 are accepted
  CHECK_NOTHROW(SpecialPiecewise::build(0.7853981634, 3.1415926536, 5));
}

TEST_CASE("special serialization round trip") {
  auto s = SpecialPiecewise::build(kPi / 4, kPi, 4);
  std::string text = s.serialize();
  auto back = SpecialPiecewise::deserialize(text);
  CHECK(back.serialize() == text);
  CHECK(SpecialPiecewise::deserialize("c1=0.5\nc2=4\ndepth=3\n").depth() == 3);
  std::string bad = text;
  bad.replace(bad.find("A_2=log:") + 9, 1, "7");
  CHECK_THROWS_AS(SpecialPiecewise::deserialize(bad), InvalidArgument);
  CHECK_THROWS_AS(SpecialPiecewise::deserialize("c1=0.5\n"), InvalidArgument);
}

TEST_CASE("gauge values") {
  CHECK(OrliczFunction::power(2).eval(LogReal(3.0)).to_double() == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(OrliczFunction::power(2)(3.0) == 9.0);
  CHECK(OrliczFunction::exp_power(1)(1.0) == doctest::Approx(std::numbers::e - 1));
  CHECK(OrliczFunction::log_square_exp()(std::numbers::e - 1) == doctest::Approx(std::numbers::e - 1));
  for (const auto* spec : {"power:2", "exppower:1", "logsquare", "special:0.5,4,3"}) {
    CHECK(parse_orlicz(spec).spec() == spec);
    CHECK(parse_orlicz(spec).eval(LogReal::zero()).is_zero());
  }
  CHECK_THROWS_AS(parse_orlicz("power:0.5"), InvalidArgument);
  CHECK_THROWS_AS(parse_orlicz("cosh:1"), InvalidArgument);
  CHECK_THROWS_AS(parse_orlicz("special:0.5,4"), InvalidArgument);
}

TEST_CASE("round trip and shape for every variant") {
  std::vector<OrliczFunction> all = {OrliczFunction::power(1), OrliczFunction::power(2.5),
                                     OrliczFunction::exp_power(1), OrliczFunction::exp_power(2),
                                     OrliczFunction::log_square_exp(),
                                     OrliczFunction::special(kPi / 4, kPi, 5)};
  for (const auto& psi : all) {
    CAPTURE(psi.spec());
    for (int i = 0; i <= 60; ++i) {
      LogReal x = LogReal::from_log(std::log(1e-3) + i * std::log(1e15 / 1e-3) / 60);
      LogReal back = psi.eval_inv(psi.eval(x));
      CHECK(double(bmp::abs(back.log() - x.log())) <= 1e-10);
    }
    // convexity of Ψ and concavity of Ψ⁻¹ on a uniform grid
    const double h = 0.01;
    for (int i = 1; i < 300; ++i) {
      double x = i * h;
      double d2 = psi(x - h) - 2 * psi(x) + psi(x + h);
      if (std::isfinite(d2)) CHECK(d2 >= -1e-12 * std::max(1.0, psi(x + h)));
      double e2 = psi.inverse(x - h) - 2 * psi.inverse(x) + psi.inverse(x + h);
      CHECK(e2 <= 1e-12 * std::max(1.0, psi.inverse(x + h)));
      CHECK(psi(x + h) > psi(x));
    }
  }
}

TEST_CASE("luxemburg norm") {
  auto p2 = OrliczFunction::power(2);
  auto e1 = OrliczFunction::exp_power(1);
  std::vector<WeightedValue> two = {{2.0, 0.25}, {2.0, 0.75}};
  CHECK(luxemburg_norm(two, p2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(luxemburg_norm({{0.0, 1.0}}, p2) == 0.0);
  CHECK(luxemburg_norm({{3.0, 1.0}}, e1) == doctest::Approx(3.0 / std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(luxemburg_norm({}, p2), InvalidArgument);
  CHECK_THROWS_AS(luxemburg_norm({{1.0, 0.0}}, p2), InvalidArgument);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  std::vector<OrliczFunction> gauges = {p2, e1, OrliczFunction::log_square_exp(),
                                        OrliczFunction::special(kPi / 4, kPi, 4)};
  for (const auto& psi : gauges) {
    CAPTURE(psi.spec());
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<WeightedValue> s;
      for (int i = 0; i < 50; ++i) s.push_back({u(rng), u(rng) / 50});
      double c = luxemburg_norm(s, psi);
      CHECK(std::abs(modular(s, psi, c) - 1.0) <= 1e-9);
      for (double lam : {0.5, 2.0, 10.0}) {
        auto t = s;
        for (auto& w : t) w.value *= lam;
        CHECK(luxemburg_norm(t, psi) == doctest::Approx(lam * c).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("growth condition probes") {
  SUBCASE("Power(3) is Delta2 with C = 8") {
    auto r = condition_probe(OrliczFunction::power(3), default_probe(ProbeCondition::Delta2));
    CHECK(r.verdict == ProbeVerdict::HoldsOnGrid);
    CHECK(r.constant == 8.0);
    CHECK_FALSE(r.conclusive);
  }
  SUBCASE("ExpPower(1) fails Delta2") {
    auto psi = OrliczFunction::exp_power(1);
    auto r = condition_probe(psi, default_probe(ProbeCondition::Delta2));
    REQUIRE(r.verdict == ProbeVerdict::FailsWithWitness);
    REQUIRE(!r.witnesses.empty());
    for (const auto& w : r.witnesses) CHECK(witness_violates(psi, r, w));
    // ratio ≈ e^x at the witness
    CHECK(r.witnesses[0].lhs == doctest::Approx(r.witnesses[0].x).epsilon(1e-6));
    ProbeSpec at50 = default_probe(ProbeCondition::Delta2);
    at50.x_grid = {50.0};
    CHECK(condition_probe(psi, at50).verdict == ProbeVerdict::FailsWithWitness);
  }
  SUBCASE("Delta-squared") {
    auto r = condition_probe(OrliczFunction::exp_power(1), default_probe(ProbeCondition::DeltaSquared));
    CHECK(r.verdict == ProbeVerdict::HoldsOnGrid);
    CHECK(r.constant == 2.0);
    ProbeSpec wide = default_probe(ProbeCondition::DeltaSquared);
    for (auto& x : wide.x_grid) x = x * x * x * x * x;  // reach past every candidate α
    auto f = condition_probe(OrliczFunction::power(2), wide);
    CHECK(f.verdict == ProbeVerdict::FailsWithWitness);
    for (const auto& w : f.witnesses) CHECK(witness_violates(OrliczFunction::power(2), f, w));
  }
  SUBCASE("Nabla0") {
    auto r = condition_probe(OrliczFunction::power(2), default_probe(ProbeCondition::Nabla0));
    CHECK(r.verdict == ProbeVerdict::HoldsOnGrid);
    auto psi = OrliczFunction::special(kPi / 4, kPi, 5);
    // Ψ(2x)/Ψ(x) is huge just past a node f(α_n), while Ψ(2Cy)/Ψ(y) ≈ 2C inside a long segment.
    const auto& sp = psi.special();
    ProbeSpec s = default_probe(ProbeCondition::Nabla0);
    s.x_grid.clear();
    for (int i = 0; i <= 300; ++i) s.x_grid.push_back(std::pow(10.0, i * 30.0 / 300));
    for (int n = 2; n <= 5; ++n) s.x_grid.push_back(sp.f(sp.alpha()[n]).to_double() * (1 + 1e-9));
    s.constants.clear();
    for (int k = 1; k <= 20; ++k) s.constants.push_back(std::ldexp(1.0, k));
    s.x0_grid = {1.0, 10.0, 1e3, 1e6};
    auto f = condition_probe(psi, s);
    CHECK(f.verdict == ProbeVerdict::FailsWithWitness);
    for (const auto& w : f.witnesses) CHECK(witness_violates(psi, f, w));
  }
  SUBCASE("HdB for powers: smallest B is max(A, sqrt A)") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ua(0.1, 20.0), up(1.0, 4.0);
    for (int trial = 0; trial < 40; ++trial) {
      double a = ua(rng), p = up(rng);
      double bstar = std::max(a, std::sqrt(a));
      ProbeSpec s = default_probe(ProbeCondition::HdB, a);
      s.constants = {bstar * 0.999, bstar, bstar * 1.5, bstar * 3};
      auto r = condition_probe(OrliczFunction::power(p), s);
      CAPTURE(a);
      CAPTURE(p);
      REQUIRE(r.verdict == ProbeVerdict::HoldsOnGrid);
      CHECK(*r.constant == bstar);
    }
  }
}
