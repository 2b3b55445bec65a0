#include "oclab/cli.hpp"

#include "oclab/carleson.hpp"
#include "oclab/criteria.hpp"
#include "oclab/errors.hpp"
#include "oclab/harmonic.hpp"
#include "oclab/nevanlinna.hpp"
#include "oclab/orlicz.hpp"
#include "oclab/probe.hpp"
#include "oclab/pullback.hpp"
#include "oclab/text.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace oclab {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Opt {
  const char* name;
  bool flag;
  const char* help;
};

const std::vector<Opt> kCommon{
    {"seed", false, "RNG seed (default 42)"},
    {"out", false, "output file (directory for separation); stdout when omitted"},
    {"config", false, "key=value file; flags given on the command line win"},
    {"save-config", false, "write the effective configuration to this file"},
};

const std::map<std::string, std::pair<const char*, std::vector<Opt>>> kCommands{
    {"orlicz",
     {"Orlicz gauges: node table, condition probes, values",
      {{"psi", false, "power:p | exppower:q | logsquare | special:c1,c2,depth"},
       {"special", true, "use the special piecewise gauge built from --c1 --c2 --depth"},
       {"c1", false, "tower constant c1"},
       {"c2", false, "constant c2"},
       {"depth", false, "number of tower segments"},
       {"dump", true, "print the node table"},
       {"probe", false, "delta2 | deltasquared | nabla0 | hdb"},
       {"a", false, "HdB parameter A"},
       {"eval", false, "x grid for a value table"}}}},
    {"carleson",
     {"Carleson function of a pull-back measure",
      {{"symbol", false, "identity | constant:re,im | power:k | blaschke:... | cusp"},
       {"space", false, "bergman (area pull-back) | hardy (boundary pull-back)"},
       {"h", false, "h grid"},
       {"samples", false, "area samples or boundary angles"},
       {"window", false, "W | S"},
       {"xi-grid", false, "number of grid angles for the sup over xi"}}}},
    {"nevanlinna",
     {"Nevanlinna counting functions and the Carleson equivalence curve",
      {{"symbol", false, "symbol spec"},
       {"w", false, "targets re,im;re,im;..."},
       {"radii", false, "|w| grid for a polar target grid"},
       {"angles", false, "angles of the polar target grid"},
       {"h", false, "h grid; switches to the equivalence report"},
       {"c", false, "rescaling constant C of the report"},
       {"samples", false, "area samples"},
       {"boundary-samples", false, "boundary angles"}}}},
    {"decomp",
     {"Calderon-Zygmund stopping cells or distribution curves",
      {{"function", false, "const:c | pole | poly:re,im;re,im;..."},
       {"threshold", false, "stopping threshold"},
       {"max-gen", false, "deepest generation"},
       {"q", false, "relative quadrature tolerance"},
       {"distribution", false, "halfplane | sector; switches to the distribution curve"},
       {"f0", false, "re,im offset of the test function"},
       {"lambda", false, "lambda grid"},
       {"samples", false, "Monte Carlo samples"}}}},
    {"criteria",
     {"Boundedness, compactness and contractivity curves",
      {{"kind", false, "boundedness | bergman | hardy | contractivity"},
       {"psi", false, "gauge (psi1 for boundedness)"},
       {"psi2", false, "second gauge for boundedness (default: psi)"},
       {"measure", false, "area | arc | zero | example21:N | pullback:<symbol>"},
       {"symbol", false, "symbol for measured curves"},
       {"model", false, "c,gamma for the model rho(h) = c exp(-gamma/h)"},
       {"h", false, "h grid"},
       {"eps", false, "eps grid for contractivity"},
       {"t-min", false, "K_{mu,2} scans t down to t-min times h"},
       {"samples", false, "Monte Carlo samples"}}}},
    {"separation",
     {"Hardy versus Bergman compactness experiment for the cusp symbol",
      {{"c1", false, "constant c1"},
       {"c2", false, "constant c2"},
       {"depth", false, "tower depth"},
       {"h", false, "measured h grid"},
       {"samples", false, "area samples"},
       {"boundary-samples", false, "boundary angles"},
       {"psi", false, "gauge for the model ratios (default: the special gauge)"}}}},
};

bool is_flag(const std::string& cmd, const std::string& key) {
  auto it = kCommands.find(cmd);
  if (it == kCommands.end()) return false;
  for (const auto& o : it->second.second)
    if (key == o.name) return o.flag;
  return false;
}

std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  return a == std::string_view::npos ? std::string() : std::string(s.substr(a, b - a + 1));
}

std::vector<std::pair<std::string, std::string>> read_pairs(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto line : split(text, '\n')) {
    std::string l = trim(line);
    if (l.empty() || l[0] == '#') continue;
    auto eq = l.find('=');
    if (eq == std::string::npos) throw InvalidArgument("config: expected key=value, got '" + l + "'");
    out.emplace_back(trim(l.substr(0, eq)), trim(l.substr(eq + 1)));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
  if (!f.flush()) throw IoError("write failed: " + path.string());
}

// Typed view of a RunConfig for the handlers.
class Args {
 public:
  explicit Args(const RunConfig& c) : c_(c) {}
  const RunConfig& cfg() const { return c_; }
  bool has(const std::string& k) const { return c_.extra.count(k) > 0; }
  std::string str(const std::string& k, const std::string& def = "") const {
    auto it = c_.extra.find(k);
    return it == c_.extra.end() ? def : it->second;
  }
  double num(const std::string& k, double def) const { return has(k) ? parse_double(str(k)) : def; }
  long integer(const std::string& k, long def) const { return has(k) ? parse_int(str(k)) : def; }
  bool flag(const std::string& k) const { return str(k) == "true"; }
  std::size_t samples(std::size_t def) const { return c_.samples ? c_.samples : def; }
  std::vector<double> h(const std::string& def) const { return parse_h_grid(c_.h_grid.empty() ? def : c_.h_grid); }

 private:
  const RunConfig& c_;
};

Complex parse_complex(std::string_view s) {
  auto parts = split(s, ',');
  if (parts.size() != 2) throw InvalidArgument("expected re,im: '" + std::string(s) + "'");
  return {parse_double(parts[0]), parse_double(parts[1])};
}

struct Output {
  std::ostream& out;
  std::ostream& err;
  std::string path;
  // CSV goes to the file when given, else to stdout; summaries then go to stderr.
  void emit(const std::string& csv, const std::string& summary) {
    if (path.empty()) {
      out << csv;
      err << summary << '\n';
    } else {
      write_file(path, csv);
      out << summary << '\n';
    }
  }
};

std::string num_text(double v) { return format_double(v); }

std::string log_text(const LogReal& v) { return v.is_zero() ? "-inf" : format_double(v.log_double()); }

int cmd_orlicz(const Args& a, Output& o) {
  OrliczFunction psi = OrliczFunction::power(2);
  if (a.flag("special")) {
    psi = OrliczFunction::special(a.num("c1", std::numbers::pi / 4), a.num("c2", std::numbers::pi),
                                  int(a.integer("depth", 5)));
  } else if (!a.cfg().psi.empty()) {
    psi = parse_orlicz(a.cfg().psi);
  } else {
    throw InvalidArgument("orlicz: give --psi or --special");
  }
  if (a.flag("dump")) {
    if (!psi.is_special()) throw InvalidArgument("orlicz: --dump needs the special gauge");
    const auto& s = psi.special();
    std::ostringstream os;
    os << "n,log_alpha,log_beta,slope,log_slope,intercept,log_intercept\n";
    for (int n = 0; n <= s.depth() + 1; ++n) {
      os << n << ',' << log_text(s.alpha()[n]) << ',';
      if (n <= s.depth()) os << log_text(s.beta()[n]);
      os << ',';
      if (n >= 1) {
        os << num_text(s.slope(n).to_double()) << ',' << log_text(s.slope(n)) << ','
           << num_text(s.intercept(n).to_double()) << ',' << log_text(s.intercept(n));
      } else {
        os << ",,,";
      }
      os << '\n';
    }
    o.emit(os.str(), "orlicz: " + psi.spec() + " node table, " + std::to_string(s.depth() + 2) + " nodes");
    return kExitOk;
  }
  if (a.has("probe")) {
    const std::string name = a.str("probe");
    ProbeCondition c;
    if (name == "delta2") c = ProbeCondition::Delta2;
    else if (name == "deltasquared") c = ProbeCondition::DeltaSquared;
    else if (name == "nabla0") c = ProbeCondition::Nabla0;
    else if (name == "hdb") c = ProbeCondition::HdB;
    else throw InvalidArgument("orlicz: unknown probe '" + name + "'");
    ProbeReport r = condition_probe(psi, default_probe(c, a.num("a", 1.0)));
    std::ostringstream os;
    os << "condition,verdict,constant,x0,conclusive,witness_x,witness_y,witness_constant\n";
    auto head = [&] {
      os << to_string(r.condition) << ',' << to_string(r.verdict) << ','
         << (r.constant ? num_text(*r.constant) : "") << ',' << (r.x0 ? num_text(*r.x0) : "") << ','
         << (r.conclusive ? "true" : "false") << ',';
    };
    if (r.witnesses.empty()) {
      head();
      os << ",,\n";
    }
    for (const auto& w : r.witnesses) {
      head();
      os << num_text(w.x) << ',' << num_text(w.y) << ',' << num_text(w.constant) << '\n';
    }
    o.emit(os.str(), "orlicz: " + psi.spec() + " " + to_string(r.condition) + " " + to_string(r.verdict));
    return kExitOk;
  }
  if (a.has("eval")) {
    std::ostringstream os;
    os << "x,psi,log_psi,psi_inv\n";
    auto xs = parse_h_grid(a.str("eval"));
    for (double x : xs) {
      if (!(x > 0)) throw InvalidArgument("orlicz: eval points must be positive");
      LogReal v = psi.eval(LogReal(x));
      os << num_text(x) << ',' << num_text(v.to_double()) << ',' << log_text(v) << ','
         << num_text(psi.eval_inv(LogReal(x)).to_double()) << '\n';
    }
    o.emit(os.str(), "orlicz: " + psi.spec() + " values at " + std::to_string(xs.size()) + " points");
    return kExitOk;
  }
  throw InvalidArgument("orlicz: give --dump, --probe or --eval");
}

int cmd_carleson(const Args& a, Output& o) {
  if (a.cfg().symbol.empty()) throw InvalidArgument("carleson: --symbol is required");
  AnalyticSymbol phi = parse_symbol(a.cfg().symbol);
  const std::string space = a.str("space", "bergman");
  RhoOptions ro;
  ro.xi_grid = int(a.integer("xi-grid", 256));
  const std::string win = a.str("window", "W");
  if (win == "S") ro.kind = WindowKind::S;
  else if (win != "W") throw InvalidArgument("carleson: --window must be W or S");
  DiskMeasure mu = DiskMeasure::zero();
  if (space == "bergman") mu = pullback_area(phi, a.samples(1000000), a.cfg().seed);
  else if (space == "hardy") mu = pullback_boundary(phi, a.samples(1 << 16));
  else throw InvalidArgument("carleson: --space must be bergman or hardy");
  std::ostringstream os;
  os << "h,rho,rho_stderr,xi_re,xi_im,mass_at_1,stderr_at_1\n";
  auto hs = a.h("0.1:0.5:0.1");
  for (double h : hs) {
    RhoEstimate e = carleson_rho(mu, h, ro);
    MassEstimate m = mu.window_mass_estimate({Complex(1, 0), h, ro.kind});
    os << num_text(h) << ',' << num_text(e.rho) << ',' << num_text(e.stderr) << ',' << num_text(e.xi.real()) << ','
       << num_text(e.xi.imag()) << ',' << num_text(m.mass) << ',' << num_text(m.stderr) << '\n';
  }
  o.emit(os.str(), "carleson: " + phi.spec() + " " + space + " rho on " + std::to_string(hs.size()) + " scales");
  return kExitOk;
}

int cmd_nevanlinna(const Args& a, Output& o) {
  if (a.cfg().symbol.empty()) throw InvalidArgument("nevanlinna: --symbol is required");
  AnalyticSymbol phi = parse_symbol(a.cfg().symbol);
  std::ostringstream os;
  if (!a.cfg().h_grid.empty()) {
    EquivalenceOptions eo;
    eo.area_samples = a.samples(1000000);
    eo.boundary_samples = std::size_t(a.integer("boundary-samples", 1 << 16));
    eo.seed = a.cfg().seed;
    eo.c = a.num("c", 2.0);
    auto rows = equivalence_report(phi, a.h(""), eo);
    os << "h,nu2,rho2,rho1,rho1_ch,ratio_nu_rho2,ratio_rho2_rho1\n";
    for (const auto& r : rows) {
      os << num_text(r.h) << ',' << num_text(r.nu2) << ',' << num_text(r.rho2) << ',' << num_text(r.rho1) << ','
         << num_text(r.rho1_ch) << ',' << num_text(r.ratio_nu_rho2) << ',' << num_text(r.ratio_rho2_rho1) << '\n';
    }
    o.emit(os.str(), "nevanlinna: " + phi.spec() + " equivalence report on " + std::to_string(rows.size()) + " scales");
    return kExitOk;
  }
  std::vector<Complex> ws;
  if (a.has("w")) {
    for (auto part : split(a.str("w"), ';')) ws.push_back(parse_complex(part));
  } else if (a.has("radii")) {
    const long m = a.integer("angles", 16);
    if (m < 1) throw InvalidArgument("nevanlinna: --angles must be positive");
    for (double r : parse_h_grid(a.str("radii")))
      for (long k = 0; k < m; ++k) ws.push_back(std::polar(r, 2 * std::numbers::pi * double(k) / double(m)));
  } else {
    throw InvalidArgument("nevanlinna: give --w, --radii or --h");
  }
  os << "w_re,w_im,n_phi,n_phi2,n_phi2_integral,preimages,method,possible_missed_roots\n";
  const Complex phi0 = phi.eval(0.0);
  for (Complex w : ws) {
    PreimageSet p = preimages(phi, w);
    int count = 0;
    for (const auto& r : p.roots) count += r.multiplicity;
    os << num_text(w.real()) << ',' << num_text(w.imag()) << ',' << num_text(n_phi_of(p)) << ','
       << num_text(n_phi2_of(p)) << ',' << num_text(n_phi2_integral_of(p, phi0)) << ',' << count << ','
       << to_string(p.method) << ',' << (p.possible_missed_roots ? "true" : "false") << '\n';
  }
  o.emit(os.str(), "nevanlinna: " + phi.spec() + " counting functions at " + std::to_string(ws.size()) + " targets");
  return kExitOk;
}

DiskFunction parse_function(const std::string& spec) {
  if (spec == "pole") return [](Complex z) { return 1.0 / (1.0 - z); };
  if (spec.rfind("const:", 0) == 0) {
    double c = parse_double(spec.substr(6));
    return [c](Complex) { return Complex(c, 0); };
  }
  if (spec.rfind("poly:", 0) == 0) {
    std::vector<Complex> coef;
    for (auto part : split(std::string_view(spec).substr(5), ';')) coef.push_back(parse_complex(part));
    return [coef](Complex z) {
      Complex v = 0;
      for (auto it = coef.rbegin(); it != coef.rend(); ++it) v = v * z + *it;
      return v;
    };
  }
  throw InvalidArgument("decomp: unknown function '" + spec + "'");
}

int cmd_decomp(const Args& a, Output& o) {
  std::ostringstream os;
  if (a.has("distribution")) {
    const std::string fam_name = a.str("distribution");
    DistributionFamily fam;
    if (fam_name == "halfplane") fam = DistributionFamily::HalfPlane;
    else if (fam_name == "sector") fam = DistributionFamily::Sector;
    else throw InvalidArgument("decomp: --distribution must be halfplane or sector");
    DistributionOptions dopts;
    dopts.samples = a.samples(1000000);
    dopts.seed = a.cfg().seed;
    const Complex f0 = a.has("f0") ? parse_complex(a.str("f0")) : Complex(0, 0);
    auto grid = parse_h_grid(a.str("lambda", "log:2:100:13"));
    auto pts = distribution_ratio(fam, f0, grid, dopts);
    os << "lambda,mass,stderr\n";
    for (const auto& p : pts) os << num_text(p.lambda) << ',' << num_text(p.mass) << ',' << num_text(p.stderr) << '\n';
    std::string summary = "decomp: " + fam_name + " at " + std::to_string(grid.size()) + " levels";
    if (grid.size() >= 4) {
      auto fit = fit_distribution(fam, f0, grid, dopts);
      summary += " K=" + num_text(fit.k) + " C1=" + num_text(fit.c1) + " C2=" + num_text(fit.c2) +
                 " tail=" + num_text(fit.tail_exponent);
    }
    o.emit(os.str(), summary);
    return kExitOk;
  }
  DiskFunction f = parse_function(a.str("function", "pole"));
  CZOptions co;
  co.q = a.num("q", 1e-3);
  co.max_generation = int(a.integer("max-gen", 6));
  auto d = cz_decompose(f, a.num("threshold", 1.0), co);
  o.emit(to_csv(d), "decomp: " + std::to_string(d.cells.size()) + " stopping cells, residual area " +
                        num_text(d.residual_area));
  return kExitOk;
}

DiskMeasure parse_measure(const std::string& spec) {
  if (spec == "area") return DiskMeasure::closed_form(ClosedFormKind::NormalizedArea);
  if (spec == "arc") return DiskMeasure::closed_form(ClosedFormKind::BoundaryLebesgue);
  if (spec == "zero") return DiskMeasure::zero();
  throw InvalidArgument("criteria: unknown measure '" + spec + "'");
}

int cmd_criteria(const Args& a, Output& o) {
  const std::string kind = a.str("kind", "bergman");
  const std::uint64_t seed = a.cfg().seed;
  if (kind == "contractivity") {
    if (a.cfg().symbol.empty()) throw InvalidArgument("criteria: --symbol is required");
    AnalyticSymbol phi = parse_symbol(a.cfg().symbol);
    ContractivityOptions copts;
    copts.samples = a.samples(1000000);
    copts.seed = seed;
    auto r = contractivity(phi, a.h("0.1:0.5:0.1"), parse_h_grid(a.str("eps", "0.1:1:0.1")), copts);
    o.emit(to_csv(r), "criteria: contractivity " + r.symbol + " C=" + num_text(r.c_fit));
    return kExitOk;
  }
  if (a.cfg().psi.empty()) throw InvalidArgument("criteria: --psi is required");
  OrliczFunction psi = parse_orlicz(a.cfg().psi);
  auto hs = a.h("0.1:0.5:0.1");
  CriterionCurve curve;
  if (kind == "boundedness") {
    OrliczFunction psi2 = a.has("psi2") ? parse_orlicz(a.str("psi2")) : psi;
    const std::string ms = a.str("measure", "area");
    DiskMeasure mu = DiskMeasure::zero();
    if (ms.rfind("example21:", 0) == 0) {
      mu = example_measure_21(psi2, int(parse_int(ms.substr(10)))).mu;
    } else if (ms.rfind("pullback:", 0) == 0) {
      mu = pullback_area(parse_symbol(ms.substr(9)), a.samples(1000000), seed);
    } else {
      mu = parse_measure(ms);
    }
    curve = boundedness_ratios(psi, psi2, mu, hs, a.num("t-min", 1e-3));
  } else if (kind == "bergman" || kind == "hardy") {
    std::optional<RhoSource> src;
    if (a.has("model")) {
      Complex cg = parse_complex(a.str("model"));
      src = RhoSource::model(cg.real(), cg.imag());
    } else {
      if (a.cfg().symbol.empty()) throw InvalidArgument("criteria: give --symbol or --model");
      AnalyticSymbol phi = parse_symbol(a.cfg().symbol);
      auto mu = std::make_shared<DiskMeasure>(kind == "bergman" ? pullback_area(phi, a.samples(1000000), seed)
                                                                : pullback_boundary(phi, a.samples(1 << 16)));
      src = RhoSource::measured(mu);
    }
    curve = kind == "bergman" ? bergman_compactness_ratio(psi, *src, hs) : hardy_compactness_ratio(psi, *src, hs);
  } else {
    throw InvalidArgument("criteria: unknown --kind '" + kind + "'");
  }
  std::string summary = "criteria: " + kind + " " + psi.spec() + " last ratio " + num_text(curve.points.back().ratio);
  if (curve.fit) summary += " fit rate " + num_text(curve.fit->rate);
  o.emit(to_csv(curve), summary);
  return kExitOk;
}

int cmd_separation(const Args& a, Output& o) {
  SeparationParams p;
  p.c1 = a.num("c1", p.c1);
  p.c2 = a.num("c2", p.c2);
  p.depth = int(a.integer("depth", p.depth));
  p.h_grid = a.h("0.25:0.6:0.05");
  p.samples = a.samples(p.samples);
  p.boundary_samples = std::size_t(a.integer("boundary-samples", long(p.boundary_samples)));
  p.seed = a.cfg().seed;
  if (!a.cfg().psi.empty()) p.psi_override = parse_orlicz(a.cfg().psi);
  SeparationReport r = separation_experiment(p);
  const std::string summary = "separation: " + to_string(r.verdict) + " (" + r.reason + ")";
  if (o.path.empty()) {
    o.out << to_csv(r) << verdict_text(r);
    o.err << summary << '\n';
  } else {
    std::filesystem::path dir(o.path);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string());
    write_file(dir / "separation.csv", to_csv(r));
    write_file(dir / "verdict.txt", verdict_text(r));
    o.out << summary << '\n';
  }
  switch (r.verdict) {
    case SeparationVerdict::InvalidParameters: return kExitInvalid;
    case SeparationVerdict::Inconclusive: return kExitInconclusive;
    default: return kExitOk;
  }
}

std::uint64_t parse_seed(const std::string& v) {
  std::uint64_t s = 0;
  auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
  if (ec != std::errc() || end != v.data() + v.size()) throw InvalidArgument("seed must be a nonnegative integer: '" + v + "'");
  return s;
}

// Round to 12 significant digits so a:b:step grids hit their decimal values.
double tidy(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return parse_double(buf);
}

}  // namespace

std::vector<double> parse_h_grid(std::string_view spec) {
  std::vector<double> out;
  if (spec.empty()) throw InvalidArgument("grid: empty specification");
  auto parts = split(spec, ':');
  if (parts.size() == 4 && parts[0] == "log") {
    double lo = parse_double(parts[1]), hi = parse_double(parts[2]);
    long n = parse_int(parts[3]);
    if (!(lo > 0 && hi >= lo) || n < 1) throw InvalidArgument("grid: log:lo:hi:count needs 0 < lo <= hi, count >= 1");
    for (long i = 0; i < n; ++i) out.push_back(tidy(n == 1 ? lo : lo * std::pow(hi / lo, double(i) / double(n - 1))));
  } else if (parts.size() == 3) {
    double a = parse_double(parts[0]), b = parse_double(parts[1]), step = parse_double(parts[2]);
    if (!(step > 0) || !(b >= a)) throw InvalidArgument("grid: start:stop:step needs step > 0 and stop >= start");
    long n = long(std::floor((b - a) / step + 1e-9)) + 1;
    if (n > 1000000) throw InvalidArgument("grid: too many points");
    for (long i = 0; i < n; ++i) out.push_back(tidy(a + double(i) * step));
  } else if (parts.size() == 1) {
    for (auto v : split(spec, ',')) out.push_back(parse_double(v));
  } else {
    throw InvalidArgument("grid: cannot parse '" + std::string(spec) + "'");
  }
  return out;
}

std::string render(const RunConfig& cfg) {
  std::ostringstream os;
  os << "subcommand=" << cfg.subcommand << '\n';
  if (!cfg.symbol.empty()) os << "symbol=" << cfg.symbol << '\n';
  if (!cfg.psi.empty()) os << "psi=" << cfg.psi << '\n';
  if (!cfg.h_grid.empty()) os << "h=" << cfg.h_grid << '\n';
  if (cfg.samples) os << "samples=" << cfg.samples << '\n';
  os << "seed=" << cfg.seed << '\n';
  if (!cfg.out.empty()) os << "out=" << cfg.out << '\n';
  for (const auto& [k, v] : cfg.extra) os << k << '=' << v << '\n';
  return os.str();
}

RunConfig parse_run_config(std::string_view text) {
  RunConfig cfg;
  for (auto& [k, v] : read_pairs(text)) {
    if (k == "subcommand") cfg.subcommand = v;
    else if (k == "symbol") cfg.symbol = v;
    else if (k == "psi") cfg.psi = v;
    else if (k == "h") cfg.h_grid = v;
    else if (k == "samples") cfg.samples = std::size_t(parse_int(v));
    else if (k == "seed") cfg.seed = parse_seed(v);
    else if (k == "out") cfg.out = v;
    else cfg.extra[k] = v;
  }
  return cfg;
}

int run(const std::vector<std::string>& argv_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"oclab: Orlicz-space composition operator numerics"};
  app.name(argv_in.empty() ? "oclab" : argv_in[0]);
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, bool>> flags;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, def] : kCommands) {
    CLI::App* sub = app.add_subcommand(name, def.first);
    subs[name] = sub;
    auto add = [&](const Opt& o) {
      if (o.flag) sub->add_flag("--" + std::string(o.name), flags[name][o.name], o.help);
      else sub->add_option("--" + std::string(o.name), values[name][o.name], o.help);
    };
    for (const auto& o : def.second) add(o);
    for (const auto& o : kCommon) add(o);
  }

  // splice --config entries in front of the command-line flags so the flags win
  std::vector<std::string> args = argv_in;
  try {
    for (std::size_t i = 1; i + 1 < args.size(); ++i) {
      if (args[i] != "--config") continue;
      std::string text = read_file(args[i + 1]);
      std::size_t at = 1;
      while (at < args.size() && !kCommands.count(args[at])) ++at;
      std::vector<std::string> extra;
      std::string cmd = at < args.size() ? args[at] : "";
      for (auto& [k, v] : read_pairs(text)) {
        if (k == "subcommand") {
          if (cmd.empty()) cmd = v;
          continue;
        }
        if (is_flag(cmd, k)) {
          if (v == "true") extra.push_back("--" + k);
        } else {
          extra.push_back("--" + k);
          extra.push_back(v);
        }
      }
      if (at >= args.size()) {
        if (cmd.empty()) throw InvalidArgument("config: no subcommand given");
        args.push_back(cmd);
        at = args.size() - 1;
      }
      args.insert(args.begin() + long(at) + 1, extra.begin(), extra.end());
      auto it = std::find(args.begin(), args.end(), "--config");
      args.erase(it, it + 2);
      break;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  std::vector<const char*> cargs;
  for (const auto& s : args) cargs.push_back(s.c_str());
  try {
    app.parse(int(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitInvalid;
  }

  std::string cmd;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) cmd = name;
  CLI::App* sub = subs[cmd];
  RunConfig cfg;
  cfg.subcommand = cmd;
  try {
    for (const auto& o : kCommands.at(cmd).second) {
      if (sub->get_option("--" + std::string(o.name))->count() == 0) continue;
      const std::string key = o.name;
      const std::string v = o.flag ? (flags[cmd][key] ? "true" : "false") : values[cmd][key];
      if (key == "symbol") cfg.symbol = v;
      else if (key == "psi") cfg.psi = v;
      else if (key == "h") cfg.h_grid = v;
      else if (key == "samples") {
        long n = parse_int(v);
        if (n < 1) throw InvalidArgument("--samples must be positive");
        cfg.samples = std::size_t(n);
      } else cfg.extra[key] = v;
    }
    if (sub->get_option("--seed")->count()) cfg.seed = parse_seed(values[cmd]["seed"]);
    if (sub->get_option("--out")->count()) cfg.out = values[cmd]["out"];
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (sub->get_option("--save-config")->count()) write_file(values[cmd]["save-config"], render(cfg));
    Args a(cfg);
    Output o{out, err, cfg.out};
    if (cmd == "orlicz") return cmd_orlicz(a, o);
    if (cmd == "carleson") return cmd_carleson(a, o);
    if (cmd == "nevanlinna") return cmd_nevanlinna(a, o);
    if (cmd == "decomp") return cmd_decomp(a, o);
    if (cmd == "criteria") return cmd_criteria(a, o);
    return cmd_separation(a, o);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace oclab
