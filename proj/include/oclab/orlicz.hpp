#pragma once

#include "oclab/log_real.hpp"
#include "oclab/text.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace oclab {

struct PowerGauge {
  double p;  // Ψ(x) = x^p, p >= 1
};

struct ExpPowerGauge {
  double q;  // Ψ(x) = e^{x^q} - 1, q >= 1
};

struct LogSquareExpGauge {};  // Ψ(x) = exp(log(1 + x)^2) - 1

// Piecewise-affine concave f = Ψ⁻¹ with tower nodes α_{n+1} = e^{c1 α_n}.
// Segment n (n >= 1) covers [α_{n-1}, α_n] with f(t) = A_n t + B_n; B_1 = 0.
// Nodes are kept up to α_{N+1} so segment N+1 is the exact continuation.
class SpecialPiecewise {
 public:
  static SpecialPiecewise build(double c1, double c2, int depth);

  double c1() const { return c1_; }
  double c2() const { return c2_; }
  int depth() const { return depth_; }

  const std::vector<LogReal>& alpha() const { return alpha_; }  // α_0..α_{N+1}
  const std::vector<LogReal>& beta() const { return beta_; }    // β_0..β_N
  int segments() const { return static_cast<int>(slope_.size()) - 1; }  // N + 1
  const LogReal& slope(int n) const;      // A_n, 1 <= n <= N+1
  LogReal intercept(int n) const;         // B_n
  const LogReal& shift(int n) const;      // B_n / A_n

  LogReal f(const LogReal& t) const;          // Ψ⁻¹
  LogReal f_inverse(const LogReal& y) const;  // Ψ
  // Segment containing t; the last segment extends to infinity.
  int segment_of(const LogReal& t) const;
  // |log f_n(α_n) - log f_{n+1}(α_n)|, the jump of f at node n.
  double continuity_defect(int n) const;

  // key=value lines: c1, c2, depth, then the derived node table.
  std::string serialize() const;
  static SpecialPiecewise deserialize(std::string_view text);

 private:
  double c1_ = 0, c2_ = 0;
  int depth_ = 0;
  std::vector<LogReal> alpha_, beta_;
  std::vector<LogReal> slope_, shift_;  // index 0 unused
  std::vector<LogReal> f_node_;         // f(α_n), n = 0..N+1
};

class OrliczFunction {
 public:
  using Variant = std::variant<PowerGauge, ExpPowerGauge, LogSquareExpGauge, SpecialPiecewise>;

  static OrliczFunction power(double p);
  static OrliczFunction exp_power(double q);
  static OrliczFunction log_square_exp();
  static OrliczFunction special(double c1, double c2, int depth);
  explicit OrliczFunction(SpecialPiecewise s) : v_(std::move(s)) {}

  LogReal eval(const LogReal& x) const;      // Ψ(x)
  LogReal eval_inv(const LogReal& y) const;  // Ψ⁻¹(y)

  // Double shortcuts. eval saturates at DBL_MAX (or +inf for closed forms).
  double operator()(double x) const;
  double inverse(double y) const;

  const Variant& variant() const { return v_; }
  bool is_special() const { return std::holds_alternative<SpecialPiecewise>(v_); }
  const SpecialPiecewise& special() const { return std::get<SpecialPiecewise>(v_); }

  // Spec string accepted by parse_orlicz.
  std::string spec() const;

 private:
  explicit OrliczFunction(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// power:p | exppower:q | logsquare | special:c1,c2,depth
OrliczFunction parse_orlicz(std::string_view spec);

}  // namespace oclab
