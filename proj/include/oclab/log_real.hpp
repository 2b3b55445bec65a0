#pragma once

#include <boost/multiprecision/float128.hpp>

#include <compare>
#include <string>

namespace oclab {

using Quad = boost::multiprecision::float128;

// A nonnegative number stored by its natural logarithm. Zero is a separate
// state, never log = -inf. The log itself is quad precision so that values
// like exp(2e14) keep about 1e-20 relative accuracy.
class LogReal {
 public:
  LogReal() = default;  // zero
  explicit LogReal(double value);

  static LogReal zero() { return LogReal(); }
  static LogReal one() { return from_log(Quad(0)); }
  static LogReal from_log(Quad log_value);
  static LogReal from_log(double log_value) { return from_log(Quad(log_value)); }

  bool is_zero() const { return zero_; }
  // Throws NumericError on the zero variant.
  const Quad& log() const;
  double log_double() const;

  // Value as a double; saturates to DBL_MAX / 0 instead of overflowing.
  double to_double() const;
  // Value in quad precision; throws OverflowError past the quad range.
  Quad to_quad() const;

  LogReal pow(double r) const;
  LogReal pow(const Quad& r) const;
  // exp of the represented value; errors when the value exceeds DBL_MAX.
  LogReal exp_of() const;
  LogReal sqrt() const { return pow(0.5); }

  friend LogReal operator*(const LogReal& a, const LogReal& b);
  friend LogReal operator/(const LogReal& a, const LogReal& b);
  friend LogReal operator+(const LogReal& a, const LogReal& b);
  // Throws NumericError when b > a (the result would be negative).
  friend LogReal operator-(const LogReal& a, const LogReal& b);

  friend bool operator==(const LogReal& a, const LogReal& b);
  friend std::strong_ordering operator<=>(const LogReal& a, const LogReal& b);

  LogReal& operator*=(const LogReal& o) { return *this = *this * o; }
  LogReal& operator+=(const LogReal& o) { return *this = *this + o; }

  // "0" or "log:<36 significant digits>".
  std::string to_string() const;
  static LogReal parse(const std::string& text);

 private:
  Quad log_ = 0;
  bool zero_ = true;
};

// a - b, or `floor` if rounding made a slightly smaller than b.
LogReal subtract_or(const LogReal& a, const LogReal& b, const LogReal& floor);

// Quad helpers shared by the Orlicz code.
Quad log1p_of(const LogReal& y);  // log(1 + y)
LogReal expm1_of(const Quad& t);  // e^t - 1 for t >= 0

}  // namespace oclab
