#include "oclab/symbols.hpp"

#include "oclab/errors.hpp"
#include "oclab/text.hpp"

#include <cmath>
#include <numbers>

namespace oclab {

namespace {

Complex blaschke_eval(const BlaschkeSymbol& b, Complex z) {
  Complex p = b.lambda;
  for (Complex a : b.zeros) p *= (z - a) / (1.0 - std::conj(a) * z);
  return p;
}

Complex blaschke_derivative(const BlaschkeSymbol& b, Complex z) {
  Complex sum = 0.0;
  for (size_t i = 0; i < b.zeros.size(); ++i) {
    Complex a = b.zeros[i];
    Complex den = 1.0 - std::conj(a) * z;
    Complex term = (1.0 - std::norm(a)) / (den * den);
    for (size_t j = 0; j < b.zeros.size(); ++j) {
      if (j != i) term *= (z - b.zeros[j]) / (1.0 - std::conj(b.zeros[j]) * z);
    }
    sum += term;
  }
  return b.lambda * sum;
}

std::string complex_text(Complex c) { return format_double(c.real()) + "," + format_double(c.imag()); }

Complex parse_complex(std::string_view text) {
  auto parts = split(text, ',');
  if (parts.size() != 2) throw InvalidArgument("expected re,im but got '" + std::string(text) + "'");
  return {parse_double(parts[0]), parse_double(parts[1])};
}

}  // namespace

AnalyticSymbol AnalyticSymbol::constant(Complex c) {
  if (!(std::abs(c) < 1.0)) throw InvalidArgument("constant symbol must lie in the open disk");
  return AnalyticSymbol(ConstantSymbol{c});
}

AnalyticSymbol AnalyticSymbol::power(int k) {
  if (k < 1) throw InvalidArgument("power symbol needs k >= 1");
  return AnalyticSymbol(PowerSymbol{k});
}

AnalyticSymbol AnalyticSymbol::blaschke(std::vector<Complex> zeros, Complex lambda) {
  if (zeros.empty()) throw InvalidArgument("blaschke product needs at least one zero");
  for (Complex a : zeros) {
    if (!(std::abs(a) < 1.0)) throw InvalidArgument("blaschke zeros must lie in the open disk");
  }
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12) throw InvalidArgument("blaschke factor must be unimodular");
  return AnalyticSymbol(BlaschkeSymbol{std::move(zeros), lambda / std::abs(lambda)});
}

Complex AnalyticSymbol::eval(Complex z) const {
  return std::visit(
      [&](const auto& s) -> Complex {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, IdentitySymbol>) {
          return z;
        } else if constexpr (std::is_same_v<S, ConstantSymbol>) {
          return s.c;
        } else if constexpr (std::is_same_v<S, PowerSymbol>) {
          Complex p = z;
          for (int i = 1; i < s.k; ++i) p *= z;
          return p;
        } else if constexpr (std::is_same_v<S, BlaschkeSymbol>) {
          return blaschke_eval(s, z);
        } else if constexpr (std::is_same_v<S, CuspSymbol>) {
          return s.eval(z);
        } else {
          return s.f(z);
        }
      },
      v_);
}

Complex AnalyticSymbol::derivative(Complex z) const {
  return std::visit(
      [&](const auto& s) -> Complex {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, IdentitySymbol>) {
          return 1.0;
        } else if constexpr (std::is_same_v<S, ConstantSymbol>) {
          return 0.0;
        } else if constexpr (std::is_same_v<S, PowerSymbol>) {
          Complex p = double(s.k);
          for (int i = 1; i < s.k; ++i) p *= z;
          return p;
        } else if constexpr (std::is_same_v<S, BlaschkeSymbol>) {
          return blaschke_derivative(s, z);
        } else if constexpr (std::is_same_v<S, CuspSymbol>) {
          return s.derivative(z);
        } else {
          if (!s.df) throw InvalidArgument("custom symbol '" + s.name + "' has no derivative");
          return s.df(z);
        }
      },
      v_);
}

bool AnalyticSymbol::has_boundary() const {
  if (const auto* c = std::get_if<CustomSymbol>(&v_)) return c->radial_boundary;
  return true;
}

Complex AnalyticSymbol::boundary_value(double theta) const {
  if (const auto* c = std::get_if<CustomSymbol>(&v_)) {
    if (!c->radial_boundary) {
      throw InvalidArgument("symbol '" + c->name + "' has no boundary extension");
    }
    return c->f(std::polar(kRadialBoundaryRadius, theta));
  }
  if (const auto* c = std::get_if<CuspSymbol>(&v_)) return c->boundary_value(theta);
  if (const auto* p = std::get_if<PowerSymbol>(&v_)) return std::polar(1.0, p->k * theta);
  return eval(std::polar(1.0, theta));
}

std::string AnalyticSymbol::spec() const {
  return std::visit(
      [](const auto& s) -> std::string {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, IdentitySymbol>) {
          return "identity";
        } else if constexpr (std::is_same_v<S, ConstantSymbol>) {
          return "constant:" + complex_text(s.c);
        } else if constexpr (std::is_same_v<S, PowerSymbol>) {
          return "power:" + std::to_string(s.k);
        } else if constexpr (std::is_same_v<S, BlaschkeSymbol>) {
          std::string out = "blaschke:";
          for (size_t i = 0; i < s.zeros.size(); ++i) {
            if (i) out += ";";
            out += complex_text(s.zeros[i]);
          }
          if (s.lambda != Complex(1.0, 0.0)) out += "@" + format_double(std::arg(s.lambda));
          return out;
        } else if constexpr (std::is_same_v<S, CuspSymbol>) {
          return "cusp";
        } else {
          return "custom:" + s.name;
        }
      },
      v_);
}

AnalyticSymbol parse_symbol(std::string_view spec) {
  auto colon = spec.find(':');
  std::string_view name = spec.substr(0, colon);
  std::string_view args = colon == std::string_view::npos ? std::string_view() : spec.substr(colon + 1);
  bool has_args = colon != std::string_view::npos;
  if (name == "identity" && !has_args) return AnalyticSymbol::identity();
  if (name == "cusp" && !has_args) return AnalyticSymbol::cusp();
  if (name == "constant" && has_args) return AnalyticSymbol::constant(parse_complex(args));
  if (name == "power" && has_args) return AnalyticSymbol::power(static_cast<int>(parse_int(args)));
  if (name == "blaschke" && has_args) {
    Complex lambda = 1.0;
    auto at = args.find('@');
    if (at != std::string_view::npos) {
      lambda = std::polar(1.0, parse_double(args.substr(at + 1)));
      args = args.substr(0, at);
    }
    std::vector<Complex> zeros;
    for (auto part : split(args, ';')) zeros.push_back(parse_complex(part));
    return AnalyticSymbol::blaschke(std::move(zeros), lambda);
  }
  throw InvalidArgument("unknown symbol spec '" + std::string(spec) + "'");
}

}  // namespace oclab
