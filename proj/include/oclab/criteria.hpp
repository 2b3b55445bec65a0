#pragma once

#include "oclab/carleson.hpp"
#include "oclab/log_real.hpp"
#include "oclab/measure.hpp"
#include "oclab/orlicz.hpp"
#include "oclab/symbols.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace oclab {

enum class CurveSource { Measured, Model };
std::string to_string(CurveSource s);

// log ρ ≈ log_c - rate/h, least squares on (1/h, log ρ).
struct ExpFit {
  double log_c = 0;
  double rate = 0;
  double residual = 0;  // RMS of the log residuals
};
ExpFit fit_exponential(const std::vector<double>& h, const std::vector<double>& rho);

struct CriterionPoint {
  double h = 0;
  double log_h = 0;  // model rows can sit below the double range
  LogReal rho;
  double stderr = 0;
  double ratio = 0;   // +inf when ρ vanishes
  double ratio2 = 0;  // second quotient where one exists (sufficient condition)
};

struct CriterionCurve {
  CurveSource source = CurveSource::Measured;
  std::vector<CriterionPoint> points;
  std::optional<ExpFit> fit;  // measured curves only, and only when every ρ > 0
};

// ρ(h) from a measure (sup over ξ) or from the model c e^{-γ/h}.
class RhoSource {
 public:
  static RhoSource measured(std::shared_ptr<const DiskMeasure> mu, RhoOptions opts = {});
  static RhoSource model(double c, double gamma);

  CurveSource kind() const { return kind_; }
  // value and standard error at h
  std::pair<LogReal, double> at(double h) const;
  // model only: ρ at h = 1/x, in the log domain
  LogReal at_inverse(const LogReal& x) const;
  double c() const { return c_; }
  double gamma() const { return gamma_; }

 private:
  CurveSource kind_ = CurveSource::Model;
  std::shared_ptr<const DiskMeasure> mu_;
  RhoOptions opts_{};
  double c_ = 1, gamma_ = 1;
};

// Necessary quotient Ψ₁⁻¹(1/h²)/Ψ₂⁻¹(1/ρ_μ(h)) in `ratio`, sufficient quotient
// Ψ₁⁻¹(1/h²)/Ψ₂⁻¹(1/(h² K_{μ,2}(h))) in `ratio2`; K uses t in [t_min_factor·h, h].
CriterionCurve boundedness_ratios(const OrliczFunction& psi1, const OrliczFunction& psi2, const DiskMeasure& mu,
                                  const std::vector<double>& h_grid, double t_min_factor = 1e-3,
                                  const RhoOptions& opts = {});

// Ψ⁻¹(1/h^d)/Ψ⁻¹(1/ρ(h)) with d = 2 (Bergman) or d = 1 (Hardy).
CriterionCurve bergman_compactness_ratio(const OrliczFunction& psi, const RhoSource& rho2,
                                         const std::vector<double>& h_grid);
CriterionCurve hardy_compactness_ratio(const OrliczFunction& psi, const RhoSource& rho1,
                                       const std::vector<double>& h_grid);
// Model sources at h = 1/x, computed entirely in the log domain.
double bergman_model_ratio(const OrliczFunction& psi, const RhoSource& model, const LogReal& x);
double hardy_model_ratio(const OrliczFunction& psi, const RhoSource& model, const LogReal& x);

// Ψ⁻¹(1/(1-|φ(z)|)²)/Ψ⁻¹(1/(1-|z|)²)
double corollary_quotient(const OrliczFunction& psi, const AnalyticSymbol& phi, Complex z);

// Normalized area of {z : |φ(z) - ξ| < t}. The cusp at ξ = -1 uses polar
// quadrature in the half-disk through the inverse chain; other symbols and
// points use Monte Carlo over the shared sample set.
double cusp_window_mass(const CuspSymbol& c, double t);

struct ContractivityRow {
  double h = 0, eps = 0;
  double mass_small = 0, mass_h = 0;
  double ratio = 0;  // mass_small / (ε² mass_h)
};

struct ContractivityReport {
  std::string symbol;
  Complex xi{1.0, 0.0};
  std::vector<ContractivityRow> rows;
  double c_fit = 0;  // max ratio over the grid
};

struct ContractivityOptions {
  std::size_t samples = 1000000;
  std::uint64_t seed = 42;
};

// mass(S(ξ, εh)) <= C ε² mass(S(ξ, h)) for the area pull-back. ξ is -1 for
// the cusp (its only boundary contact) and 1 otherwise.
ContractivityReport contractivity(const AnalyticSymbol& phi, const std::vector<double>& h_grid,
                                  const std::vector<double>& eps_grid, const ContractivityOptions& opts = {});
std::string to_csv(const ContractivityReport& r);

enum class SeparationVerdict { HardyCompactBergmanNot, Inconclusive, NoSeparation, InvalidParameters };
std::string to_string(SeparationVerdict v);

struct SeparationParams {
  double c1 = 0.7853981633974483;
  double c2 = 3.141592653589793;
  int depth = 5;
  std::vector<double> h_grid{0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6};
  std::size_t samples = 2000000;
  std::size_t boundary_samples = 1 << 16;
  std::uint64_t seed = 42;
  // Ψ for the model ratios; the special Ψ(c1, c2, depth) when empty
  std::optional<OrliczFunction> psi_override;
  double max_rel_stderr = 0.2;
  double hardy_bound = 1e3;    // ρ_φ(h) <= hardy_bound e^{-c1/h}
  double bergman_bound = 1e-3; // ρ_{φ,2}(h) >= bergman_bound e^{-c2/h}
  double hardy_limit = 0.05;
};

struct SeparationRow {
  CurveSource source = CurveSource::Measured;
  double h = 0, log_h = 0;
  LogReal rho1, rho2;
  double rho2_stderr = 0;
  double hardy_ratio = 0, bergman_ratio = 0;
  int tower_index = -1;  // model rows: n with x = α_n (Hardy) or x = √α_n (Bergman)
};

struct SeparationReport {
  SeparationVerdict verdict = SeparationVerdict::Inconclusive;
  std::string reason;
  std::vector<SeparationRow> rows;
  ExpFit fit_rho1, fit_rho2;
  double hardy_constant = 0;   // max ρ_φ(h) e^{c1/h}
  double bergman_constant = 0; // min ρ_{φ,2}(h) e^{c2/h}
  double deepest_hardy_ratio = 0;
  std::vector<double> bergman_tower_ratios;  // at x = √α_n past the case split
  bool bounds_ok = false, hardy_ok = false, bergman_ok = false;
};

SeparationReport separation_experiment(const SeparationParams& p);
// h,log_h,rho1,log_rho1,rho2,log_rho2,rho2_stderr,hardy_ratio,bergman_ratio,source,tower_index
std::string to_csv(const SeparationReport& r);
std::string verdict_text(const SeparationReport& r);

std::string to_csv(const CriterionCurve& c);

}  // namespace oclab
