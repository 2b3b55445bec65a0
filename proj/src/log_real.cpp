#include "oclab/log_real.hpp"

#include "oclab/errors.hpp"

#include <cfloat>
#include <cmath>

namespace oclab {

namespace bmp = boost::multiprecision;

namespace {

const Quad kLogDblMax = bmp::log(Quad(DBL_MAX));
const Quad kLogQuadMax = Quad(11355);

Quad checked(const Quad& v) {
  if (bmp::isnan(v)) throw NumericError("LogReal: NaN log value");
  if (bmp::abs(v) > Quad(DBL_MAX)) throw OverflowError("LogReal: log value overflows");
  return v;
}

}  // namespace

LogReal::LogReal(double value) {
  if (!(value >= 0.0) || std::isinf(value)) {
    throw NumericError("LogReal: value must be finite and nonnegative");
  }
  if (value > 0.0) {
    log_ = bmp::log(Quad(value));
    zero_ = false;
  }
}

LogReal LogReal::from_log(Quad log_value) {
  LogReal r;
  r.log_ = checked(log_value);
  r.zero_ = false;
  return r;
}

const Quad& LogReal::log() const {
  if (zero_) throw NumericError("LogReal: log of zero");
  return log_;
}

double LogReal::log_double() const { return static_cast<double>(log()); }

double LogReal::to_double() const {
  if (zero_) return 0.0;
  if (log_ > kLogDblMax) return DBL_MAX;
  return static_cast<double>(bmp::exp(log_));
}

Quad LogReal::to_quad() const {
  if (zero_) return Quad(0);
  if (log_ > kLogQuadMax) throw OverflowError("LogReal: value exceeds quad range");
  return bmp::exp(log_);
}

LogReal LogReal::pow(double r) const { return pow(Quad(r)); }

LogReal LogReal::pow(const Quad& r) const {
  if (zero_) {
    if (r > 0) return zero();
    if (r == 0) return one();
    throw NumericError("LogReal: negative power of zero");
  }
  return from_log(log_ * r);
}

LogReal LogReal::exp_of() const {
  if (zero_) return one();
  if (log_ > kLogDblMax) throw OverflowError("LogReal: exp_of argument exceeds double range");
  return from_log(bmp::exp(log_));
}

LogReal operator*(const LogReal& a, const LogReal& b) {
  if (a.zero_ || b.zero_) return LogReal::zero();
  return LogReal::from_log(a.log_ + b.log_);
}

LogReal operator/(const LogReal& a, const LogReal& b) {
  if (b.zero_) throw NumericError("LogReal: division by zero");
  if (a.zero_) return LogReal::zero();
  return LogReal::from_log(a.log_ - b.log_);
}

LogReal operator+(const LogReal& a, const LogReal& b) {
  if (a.zero_) return b;
  if (b.zero_) return a;
  const Quad& hi = a.log_ >= b.log_ ? a.log_ : b.log_;
  const Quad& lo = a.log_ >= b.log_ ? b.log_ : a.log_;
  return LogReal::from_log(hi + bmp::log1p(bmp::exp(lo - hi)));
}

LogReal operator-(const LogReal& a, const LogReal& b) {
  if (b.zero_) return a;
  if (a.zero_ || b.log_ > a.log_) throw NumericError("LogReal: negative difference");
  if (a.log_ == b.log_) return LogReal::zero();
  return LogReal::from_log(a.log_ + bmp::log(-bmp::expm1(b.log_ - a.log_)));
}

bool operator==(const LogReal& a, const LogReal& b) {
  if (a.zero_ || b.zero_) return a.zero_ == b.zero_;
  return a.log_ == b.log_;
}

std::strong_ordering operator<=>(const LogReal& a, const LogReal& b) {
  if (a.zero_ || b.zero_) {
    if (a.zero_ && b.zero_) return std::strong_ordering::equal;
    return a.zero_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.log_ < b.log_) return std::strong_ordering::less;
  if (a.log_ > b.log_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string LogReal::to_string() const {
  if (zero_) return "0";
  return "log:" + log_.str(36, std::ios_base::scientific);
}

LogReal LogReal::parse(const std::string& text) {
  if (text == "0") return zero();
  if (text.rfind("log:", 0) != 0) throw InvalidArgument("LogReal: cannot parse '" + text + "'");
  try {
    return from_log(Quad(text.substr(4)));
  } catch (const std::runtime_error&) {
    throw InvalidArgument("LogReal: cannot parse '" + text + "'");
  }
}

LogReal subtract_or(const LogReal& a, const LogReal& b, const LogReal& floor) {
  if (a <= b) return floor;
  LogReal d = a - b;
  return d < floor ? floor : d;
}

Quad log1p_of(const LogReal& y) {
  if (y.is_zero()) return Quad(0);
  const Quad& l = y.log();
  if (l > 0) return l + bmp::log1p(bmp::exp(-l));
  return bmp::log1p(bmp::exp(l));
}

LogReal expm1_of(const Quad& t) {
  if (t < 0) throw NumericError("expm1_of: negative argument");
  if (t == 0) return LogReal::zero();
  if (t > 1) return LogReal::from_log(t + bmp::log(-bmp::expm1(-t)));
  return LogReal::from_log(bmp::log(bmp::expm1(t)));
}

}  // namespace oclab
