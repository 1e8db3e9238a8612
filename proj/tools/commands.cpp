#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "criteria.hpp"
#include "vacuumlab/casimir.hpp"
#include "vacuumlab/cavity.hpp"
#include "vacuumlab/coulomb.hpp"
#include "vacuumlab/deltaseq.hpp"
#include "vacuumlab/errors.hpp"
#include "vacuumlab/oscillator.hpp"

namespace vacuumlab::cli {
namespace {

using nlohmann::json;

constexpr const char* kVersion = "vacuumlab 1.0.0";
constexpr double kPlanckLengthKm = 1.616255e-38;
constexpr double kAuKm = 1.495978707e8;

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "nan";
  return num(v.get<double>());
}

// Header rows shared by every artifact: the version, the command and the
// parameters as given, sorted by key.
std::vector<std::string> preamble(const RunConfig& cfg) {
  std::vector<std::string> out{kVersion, "command: " + command_name(cfg.command)};
  for (const auto& [k, v] : cfg.values) {
    if (k != "out" && k != "path") out.push_back(k + " = " + v);
  }
  return out;
}

std::vector<double> grid(double lo, double hi, int points, bool log_spaced) {
  if (points < 1) throw ConfigError("'points' must be positive");
  if (!(hi >= lo)) throw ConfigError("grid upper end below lower end");
  if (log_spaced && !(lo > 0.0)) throw ConfigError("log-spaced grid needs a positive lower end");
  std::vector<double> out;
  for (int i = 0; i < points; ++i) {
    const double u = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    out.push_back(log_spaced ? lo * std::pow(hi / lo, u) : lo + (hi - lo) * u);
  }
  return out;
}

// ---- delta ----

deltaseq::DeltaFamily delta_family(const RunConfig& cfg) {
  const std::string shape = cfg.text("shape", "lambda");
  const long n = cfg.integer("n", 4);
  if (shape == "lambda") return deltaseq::lambda_triangle(n);
  if (shape == "m") return deltaseq::m_shape(cfg.number("a", 1.0), n);
  if (shape == "shifted") return deltaseq::shifted_pair(cfg.integer("j", 1), n);
  if (shape == "pv") return deltaseq::principal_value(n);
  throw ConfigError("'shape' must be lambda, m, shifted or pv");
}

std::vector<json> delta_params(const RunConfig& cfg, const deltaseq::DeltaFamily& f) {
  return {cfg.text("shape", "lambda"), static_cast<double>(f.n), static_cast<double>(f.j), f.a};
}

Table delta_table(const RunConfig& cfg) {
  const auto f = delta_family(cfg);
  Table t;
  t.notes = preamble(cfg);
  t.notes.push_back("delta_n: sequence member at momentum t");
  t.notes.push_back("fourier: (1/2pi) int delta_n(k) exp(ikt) dk, at position t");
  t.columns = {"shape", "n", "j", "a", "t", "delta_n", "fourier"};
  for (double x : grid(cfg.number("tmin", -2.0), cfg.number("tmax", 2.0), cfg.integer("points", 201), false)) {
    auto row = delta_params(cfg, f);
    row.insert(row.end(), {x, deltaseq::eval(f, x), deltaseq::fourier(f, x)});
    t.rows.push_back(row);
  }
  return t;
}

Table delta_summary(const RunConfig& cfg) {
  const auto f = delta_family(cfg);
  const auto spec = quadrature_from(cfg);
  Table t;
  t.notes = preamble(cfg);
  t.notes.push_back("integral: int delta_n(k) dk");
  t.notes.push_back("fourier_integral: int of the Fourier transform over the real line; nan for pv");
  t.columns = {"shape", "n", "j", "a", "integral", "fourier_integral"};
  auto row = delta_params(cfg, f);
  row.push_back(deltaseq::integrate_against(f, [](double) { return 1.0; }, spec));
  row.push_back(f.shape == deltaseq::Shape::PrincipalValue ? NAN : deltaseq::fourier_integral(f, spec));
  t.rows.push_back(row);
  return t;
}

// ---- coulomb ----

std::vector<std::string> profile_columns(const vacuum::VacuumProfile& p) {
  if (p.kind == vacuum::ProfileKind::BoxShell) return {"profile", "k1", "k2"};
  return {"profile", "lambda2", "y0"};
}

std::vector<json> profile_cells(const vacuum::VacuumProfile& p) {
  if (p.kind == vacuum::ProfileKind::BoxShell) return {"box", p.k1, p.k2};
  return {"lorentz", p.lambda2, p.y0};
}

struct CurveResult {
  std::vector<double> r, v;
  double zero = NAN;
};

CurveResult coulomb_curve(const RunConfig& cfg, const vacuum::VacuumProfile& prof, double q) {
  CurveResult c;
  c.r = grid(cfg.positive("rmin", 0.1), cfg.positive("rmax", 100.0), cfg.integer("points", 200), true);
  auto pot = [&](double r) { return coulomb::potential(prof, q, r); };
  for (double r : c.r) c.v.push_back(pot(r));
  for (std::size_t i = 1; i < c.r.size(); ++i) {
    if (c.v[i - 1] * c.v[i] < 0.0) {
      c.zero = coulomb::sign_change_radius(pot, c.r[i - 1], c.r[i]);
      break;
    }
  }
  return c;
}

json zero_summary(double zero, double length_km) {
  json s = json::object();
  if (std::isnan(zero)) {
    s["sign_change_radius"] = nullptr;
    return s;
  }
  s["sign_change_radius"] = zero;
  s["sign_change_km"] = zero * length_km;
  s["sign_change_au"] = zero * length_km / kAuKm;
  return s;
}

Table coulomb_table(const RunConfig& cfg) {
  const auto prof = profile_from(cfg);
  const double q = cfg.number("q", 1.0), ell = cfg.positive("length_km", kPlanckLengthKm);
  const auto c = coulomb_curve(cfg, prof, q);
  Table t;
  t.notes = preamble(cfg);
  t.notes.push_back("potential: q<phi_gC(r)> in units of the length scale, physical charge q");
  t.notes.push_back("r_km, r_au: r times length_km");
  t.columns = profile_columns(prof);
  t.columns.insert(t.columns.end(), {"q", "r", "r_km", "r_au", "potential"});
  for (std::size_t i = 0; i < c.r.size(); ++i) {
    auto row = profile_cells(prof);
    row.insert(row.end(), {q, c.r[i], c.r[i] * ell, c.r[i] * ell / kAuKm, c.v[i]});
    t.rows.push_back(row);
  }
  t.summary = zero_summary(c.zero, ell);
  t.notes.push_back("summary: " + t.summary.dump());
  return t;
}

Table coulomb_summary(const RunConfig& cfg) {
  const auto prof = profile_from(cfg);
  const double q = cfg.number("q", 1.0), ell = cfg.positive("length_km", kPlanckLengthKm);
  const auto c = coulomb_curve(cfg, prof, q);
  Table t;
  t.notes = preamble(cfg);
  t.notes.push_back("sign_change_radius: first zero of the potential inside [rmin, rmax]; nan if none");
  t.columns = profile_columns(prof);
  t.columns.insert(t.columns.end(), {"q", "sign_change_radius", "sign_change_au"});
  auto row = profile_cells(prof);
  row.insert(row.end(), {q, c.zero, c.zero * ell / kAuKm});
  t.rows.push_back(row);
  return t;
}

// ---- cavity ----

cavity::Side side_from(const RunConfig& cfg) {
  const std::string s = cfg.text("side", "left");
  if (s == "left") return cavity::Side::Left;
  if (s == "right") return cavity::Side::Right;
  throw ConfigError("'side' must be left or right");
}

std::vector<json> scattering_cells(const cavity::CavityConfig& c, double k, cavity::Side side) {
  const auto s = cavity::scattering_coeffs(k, c, side);
  const double b2 = std::norm(side == cavity::Side::Left ? s.B : s.E);
  const double e2 = std::norm(side == cavity::Side::Left ? s.E : s.B);
  return {k, b2, e2, std::abs(s.C), std::abs(s.D), b2 + e2 - 1.0};
}

Table cavity_table(const RunConfig& cfg) {
  const auto c = cavity_from(cfg);
  Table t;
  t.notes = preamble(cfg);
  const std::string what = cfg.text("what", "scattering");
  if (what == "resonances") {
    t.notes.push_back("roots of k^2 + 2i alpha k + alpha^2 (exp(ikL) - 1) = 0, labelled by Lambert W branch and sign");
    t.columns = {"alpha", "L", "branch", "sign", "re_k", "im_k", "residual"};
    for (const auto& r : cavity::resonance_roots(c, cfg.integer("nmin", 0), cfg.integer("nmax", 2))) {
      t.rows.push_back({c.alpha, c.L, static_cast<double>(r.branch), static_cast<double>(r.sign), r.k.real(),
                        r.k.imag(), r.residual});
    }
    return t;
  }
  if (what != "scattering") throw ConfigError("'what' must be scattering or resonances");
  const auto side = side_from(cfg);
  t.notes.push_back("reflection, transmission: |B|^2, |E|^2 for incidence from 'side'");
  t.notes.push_back("unitarity: reflection + transmission - 1");
  t.columns = {"alpha", "beta", "L", "dirichlet", "side", "k", "reflection", "transmission",
               "abs_C", "abs_D", "unitarity"};
  for (double k : grid(cfg.positive("kmin", 0.01), cfg.positive("kmax", 10.0), cfg.integer("points", 200), false)) {
    std::vector<json> row{c.alpha, c.beta, c.L, c.dirichlet ? "true" : "false", cfg.text("side", "left")};
    const auto s = scattering_cells(c, k, side);
    row.insert(row.end(), s.begin(), s.end());
    t.rows.push_back(row);
  }
  return t;
}

Table cavity_summary(const RunConfig& cfg) {
  const auto c = cavity_from(cfg);
  Table t;
  t.notes = preamble(cfg);
  t.notes.push_back("reflection, transmission at the single momentum k");
  t.columns = {"alpha", "beta", "L", "k", "reflection", "transmission", "abs_C", "abs_D", "unitarity"};
  std::vector<json> row{c.alpha, c.beta, c.L};
  const auto s = scattering_cells(c, cfg.positive("k", 1.0), side_from(cfg));
  row.insert(row.end(), s.begin(), s.end());
  t.rows.push_back(row);
  return t;
}

// ---- casimir ----

Table casimir_table(const RunConfig& cfg) {
  const auto spec = quadrature_from(cfg);
  const double L = cfg.positive("gap", 1.0);
  Table t;
  t.notes = preamble(cfg);
  const int dim = cfg.integer("dim", 1);
  if (dim == 1) {
    const auto row = casimir::alpha_sweep_1p1(L, {cfg.positive("alpha", 100.0)}, spec).front();
    t.notes.push_back("p_series: multiple-reflection sum on the imaginary axis with Euler-Maclaurin tail");
    t.notes.push_back("p_quad: real-axis quadrature of (1/2pi) 2k Re[q/(1-q)], q = r(k) exp(2ikL)");
    t.notes.push_back("p_comb16: Dirichlet comb at kappa = pi/2L, -pi/(16 L^2)");
    t.notes.push_back("p_em24: Euler-Maclaurin endpoint, -pi/(24 L^2)");
    t.columns = {"alpha", "L", "p_series", "p_quad", "p_comb16", "p_em24"};
    t.rows.push_back({row.alpha, row.L, row.p_series, row.p_quad, row.p_comb16, row.p_em24});
    return t;
  }
  if (dim != 3) throw ConfigError("'dim' must be 1 or 3");
  vacuum::VacuumProfile p;
  p.kind = vacuum::ProfileKind::LorentzExp;
  p.Z = cfg.positive("Z", 1.0);
  p.lambda2 = cfg.number("lambda2", 0.0);
  p.y0 = cfg.positive("y0", 1e-3);
  if (p.lambda2 < 0.0) throw ConfigError("'lambda2' must be non-negative");
  const auto b = casimir::pressure_3p1(p, L, spec);
  t.notes.push_back("leading: -Z pi^2/(240 L^4)");
  t.notes.push_back("y0_corrections: powers of y0/L at lambda2 = 0");
  t.notes.push_back("lambda2_correction: first order in lambda2");
  t.notes.push_back("total_pa: total times hbar c / l^4, lengths in Planck units");
  t.columns = {"Z", "lambda2", "y0", "L", "total", "leading", "y0_corrections", "lambda2_correction",
               "terms_used", "total_pa"};
  t.rows.push_back({p.Z, p.lambda2, p.y0, L, b.total, b.leading, b.y0_corrections, b.lambda2_correction,
                    static_cast<double>(b.terms_used), casimir::to_physical_pressure(b.total)});
  t.summary = {{"total", b.total},
               {"leading", b.leading},
               {"y0_corrections", b.y0_corrections},
               {"lambda2_correction", b.lambda2_correction},
               {"terms_used", b.terms_used}};
  return t;
}

// ---- stats ----

struct StatsInput {
  std::vector<double> probs, intensities;
  int N, nmax;
};

StatsInput stats_input(const RunConfig& cfg) {
  StatsInput s;
  RunConfig c = cfg;
  if (!c.has("probs")) c.values["probs"] = "0.3,0.7";
  if (!c.has("intensities")) c.values["intensities"] = "1,2.5";
  s.probs = c.list("probs");
  s.intensities = c.list("intensities");
  if (s.probs.size() != s.intensities.size()) throw ConfigError("'probs' and 'intensities' differ in length");
  s.N = cfg.integer("N", 100);
  s.nmax = cfg.integer("nmax", 20);
  if (s.N < 1 || s.nmax < 0) throw ConfigError("need N >= 1 and nmax >= 0");
  return s;
}

Table stats_table(const RunConfig& cfg) {
  const auto s = stats_input(cfg);
  Table t;
  t.notes = preamble(cfg);
  t.notes.push_back("p_renyi: (1/n!) d^n/dl^n (sum_i p_i exp(l w_i/N))^N at l = -1");
  t.notes.push_back("p_shannon: Poisson with mean sum_i p_i w_i");
  t.notes.push_back("gap: p_renyi - p_shannon");
  t.columns = {"N", "n", "p_renyi", "p_shannon", "gap"};
  for (int n = 0; n <= s.nmax; ++n) {
    const double r = oscillator::renyi_poisson_pmf(s.probs, s.intensities, s.N, n);
    const double sh = oscillator::shannon_poisson_pmf(s.probs, s.intensities, n);
    t.rows.push_back({static_cast<double>(s.N), static_cast<double>(n), r, sh, r - sh});
  }
  return t;
}

Table stats_summary(const RunConfig& cfg) {
  const auto s = stats_input(cfg);
  double gap = 0.0, mass = 0.0;
  for (int n = 0; n <= s.nmax; ++n) {
    const double r = oscillator::renyi_poisson_pmf(s.probs, s.intensities, s.N, n);
    gap = std::max(gap, std::abs(r - oscillator::shannon_poisson_pmf(s.probs, s.intensities, n)));
    mass += r;
  }
  Table t;
  t.notes = preamble(cfg);
  t.notes.push_back("shannon_gap: max over n <= nmax of |p_renyi - p_shannon|");
  t.notes.push_back("renyi_mass: sum over n <= nmax of p_renyi");
  t.columns = {"N", "nmax", "shannon_gap", "renyi_mass"};
  t.rows.push_back({static_cast<double>(s.N), static_cast<double>(s.nmax), gap, mass});
  return t;
}

// ---- shift ----

Table shift_table(const RunConfig& cfg) {
  const auto prof = profile_from(cfg);
  const auto spec = quadrature_from(cfg);
  const double q = cfg.number("q", 1.0);
  Table t;
  t.notes = preamble(cfg);
  t.notes.push_back("free: q^2 int dk density/|k|, the free-space vacuum average");
  t.notes.push_back("plane: the same with a Dirichlet plane at distance L");
  t.notes.push_back("image: (q/2)<phi_gC(2L)> from the closed-form potential");
  t.notes.push_back("residual: plane - free - image");
  t.columns = profile_columns(prof);
  t.columns.insert(t.columns.end(), {"q", "L", "free", "plane", "image", "residual"});
  const double free = oscillator::radiative_shift(prof, q, std::nullopt, spec);
  auto row = profile_cells(prof);
  if (cfg.has("plane")) {
    const double L = cfg.positive("plane", 1.0);
    const double plane = oscillator::radiative_shift(prof, q, L, spec);
    const double image = 0.5 * q * coulomb::mean_field(prof, q, 2 * L);
    row.insert(row.end(), {q, L, free, plane, image, plane - free - image});
  } else {
    row.insert(row.end(), {q, NAN, free, NAN, NAN, NAN});
  }
  t.rows.push_back(row);
  return t;
}

// ---- validate ----

Table validate_table(const RunConfig& cfg) {
  Table t;
  t.notes = preamble(cfg);
  t.columns = {"criterion", "name", "expected", "measured", "tolerance", "pass", "note"};
  std::vector<acceptance::CriterionResult> results;
  if (cfg.has("criterion")) {
    results.push_back(acceptance::run(cfg.integer("criterion", 1)));
  } else {
    results = acceptance::run_all();
  }
  int passed = 0;
  for (const auto& r : results) {
    t.rows.push_back({static_cast<double>(r.id), r.name, r.expected, r.measured, r.tolerance, r.pass, r.note});
    passed += r.pass;
  }
  t.summary = {{"passed", passed}, {"total", results.size()}};
  return t;
}

}  // namespace

Table run_table(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Delta: return delta_table(cfg);
    case Command::Coulomb: return coulomb_table(cfg);
    case Command::Cavity: return cavity_table(cfg);
    case Command::Casimir: return casimir_table(cfg);
    case Command::Stats: return stats_table(cfg);
    case Command::Shift: return shift_table(cfg);
    case Command::Validate: return validate_table(cfg);
    case Command::Sweep: return run_sweep(cfg);
  }
  throw ConfigError("unhandled command");
}

Table summary_row(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Delta: return delta_summary(cfg);
    case Command::Coulomb: return coulomb_summary(cfg);
    case Command::Cavity: return cavity_summary(cfg);
    case Command::Stats: return stats_summary(cfg);
    case Command::Casimir:
    case Command::Shift: return run_table(cfg);
    case Command::Validate:
    case Command::Sweep: break;
  }
  throw ConfigError("'" + command_name(cfg.command) + "' has no sweep row");
}

Table run_sweep(const RunConfig& cfg) {
  if (!cfg.sweep) throw ConfigError("no sweep block");
  const auto& s = *cfg.sweep;
  if (s.values.empty()) throw ConfigError("sweep needs a non-empty 'values' list");
  Table out;
  out.notes = preamble(cfg);
  for (const auto& v : s.values) {
    Table row = summary_row(with_value(cfg, s.parameter, v));
    if (out.columns.empty()) {
      out.columns = row.columns;
      // Column descriptions of the target, without its own preamble.
      for (std::size_t i = preamble(with_value(cfg, s.parameter, v)).size(); i < row.notes.size(); ++i) {
        out.notes.push_back(row.notes[i]);
      }
    }
    for (auto& r : row.rows) out.rows.push_back(std::move(r));
  }
  return out;
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (const auto& n : t.notes) os << "# " << n << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::string c = cell(row[i]);
      // Quote text that would break the row apart.
      if (c.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char ch : c) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        c = q + "\"";
      }
      os << (i ? "," : "") << c;
    }
    os << '\n';
  }
  return os.str();
}

std::string to_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
    rows.push_back(obj);
  }
  json doc = {{"notes", t.notes}, {"columns", t.columns}, {"rows", rows}};
  if (!t.summary.empty()) doc["summary"] = t.summary;
  return doc.dump(2) + "\n";
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  const Table t = cfg.command == Command::Sweep ? run_sweep(cfg) : run_table(cfg);
  const std::string text = cfg.output.format == Format::Csv ? to_csv(t) : to_json(t);
  if (cfg.output.path.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.output.path, std::ios::binary);
    if (!(f << text)) throw IoError("cannot write '" + cfg.output.path + "'");
    if (cfg.output.format == Format::Csv && !t.summary.empty()) {
      std::ofstream s(cfg.output.path + ".summary.json", std::ios::binary);
      if (!(s << t.summary.dump(2) << '\n')) throw IoError("cannot write summary next to '" + cfg.output.path + "'");
    }
  }
  if (cfg.command == Command::Validate) {
    for (const auto& row : t.rows) {
      if (!row[5].get<bool>()) return 1;
    }
  }
  return 0;
}

}  // namespace vacuumlab::cli
