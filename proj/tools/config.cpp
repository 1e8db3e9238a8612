#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "vacuumlab/errors.hpp"

namespace vacuumlab::cli {
namespace {

const std::vector<std::string> kSharedKeys = {"out", "path", "rel_tol", "abs_tol", "max_subdivisions"};
const std::vector<std::string> kProfileKeys = {"profile", "k1", "k2", "lambda2", "y0"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("'" + key + "': not a number: '" + raw + "'");
  }
  if (!std::isfinite(v)) throw ConfigError("'" + key + "': must be finite");
  return v;
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::string> concat(std::initializer_list<const std::vector<std::string>*> parts) {
  std::vector<std::string> out;
  for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

}  // namespace

bool RunConfig::has(const std::string& key) const { return values.count(key) != 0; }

std::string RunConfig::text(const std::string& key, const std::string& fallback) const {
  const auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

double RunConfig::number(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw ConfigError("missing required parameter '" + key + "'");
  return parse_double(key, it->second);
}

double RunConfig::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

double RunConfig::positive(const std::string& key, double fallback) const {
  const double v = number(key, fallback);
  if (!(v > 0.0)) throw ConfigError("'" + key + "' must be positive");
  return v;
}

int RunConfig::integer(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const double v = number(key);
  if (v != std::floor(v) || std::abs(v) > 2e9) throw ConfigError("'" + key + "' must be an integer");
  return static_cast<int>(v);
}

bool RunConfig::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = trim(values.at(key));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("'" + key + "' must be true or false");
}

std::vector<double> RunConfig::list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(text(key, ""))) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError("'" + key + "' must be a non-empty comma-separated list");
  return out;
}

Command parse_command(const std::string& name) {
  static const std::map<std::string, Command> names = {
      {"delta", Command::Delta},   {"coulomb", Command::Coulomb}, {"cavity", Command::Cavity},
      {"casimir", Command::Casimir}, {"stats", Command::Stats},   {"shift", Command::Shift},
      {"validate", Command::Validate}, {"sweep", Command::Sweep}};
  const auto it = names.find(trim(name));
  if (it == names.end()) throw ConfigError("unknown command '" + name + "'");
  return it->second;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::Delta: return "delta";
    case Command::Coulomb: return "coulomb";
    case Command::Cavity: return "cavity";
    case Command::Casimir: return "casimir";
    case Command::Stats: return "stats";
    case Command::Shift: return "shift";
    case Command::Validate: return "validate";
    case Command::Sweep: return "sweep";
  }
  return "?";
}

const std::vector<std::string>& command_keys(Command c) {
  static const std::vector<std::string> delta = {"shape", "n", "j", "a", "tmin", "tmax", "points"};
  static const std::vector<std::string> coulomb_own = {"q", "rmin", "rmax", "points", "length_km"};
  static const std::vector<std::string> coulomb = concat({&kProfileKeys, &coulomb_own});
  static const std::vector<std::string> cav = {"alpha", "beta",  "gap",  "dirichlet", "side", "what",
                                               "k",     "kmin",  "kmax", "points",    "nmin", "nmax"};
  static const std::vector<std::string> casimir = {"alpha", "gap", "dim", "lambda2", "y0", "Z"};
  static const std::vector<std::string> stats = {"probs", "intensities", "N", "nmax"};
  static const std::vector<std::string> shift_own = {"q", "plane"};
  static const std::vector<std::string> shift = concat({&kProfileKeys, &shift_own});
  static const std::vector<std::string> validate = {"criterion"};
  static const std::vector<std::string> sweep = {"target", "parameter", "values"};
  switch (c) {
    case Command::Delta: return delta;
    case Command::Coulomb: return coulomb;
    case Command::Cavity: return cav;
    case Command::Casimir: return casimir;
    case Command::Stats: return stats;
    case Command::Shift: return shift;
    case Command::Validate: return validate;
    case Command::Sweep: return sweep;
  }
  return validate;
}

std::vector<std::string> allowed_keys(Command c) {
  auto keys = concat({&kSharedKeys, &command_keys(c)});
  if (c == Command::Sweep) {
    for (Command t : {Command::Delta, Command::Coulomb, Command::Cavity, Command::Casimir,
                      Command::Stats, Command::Shift}) {
      for (const auto& k : command_keys(t)) {
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
      }
    }
  }
  return keys;
}

KeyValues parse_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (out.count(key)) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  return parse_key_values(in);
}

RunConfig make_config(Command command, const KeyValues& file_values, const KeyValues& flag_values) {
  RunConfig cfg;
  cfg.command = command;
  cfg.values = file_values;
  for (const auto& [k, v] : flag_values) cfg.values[k] = v;
  // A config file may name its command; it must agree with the one invoked.
  if (auto it = cfg.values.find("command"); it != cfg.values.end()) {
    if (parse_command(it->second) != command) {
      throw ConfigError("config file is for '" + it->second + "', not '" + command_name(command) + "'");
    }
    cfg.values.erase(it);
  }

  const auto keys = allowed_keys(command);
  for (const auto& [k, v] : cfg.values) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw ConfigError("unknown key '" + k + "' for command '" + command_name(command) + "'");
    }
  }

  const std::string fmt = cfg.text("out", "csv");
  if (fmt == "csv") cfg.output.format = Format::Csv;
  else if (fmt == "json") cfg.output.format = Format::Json;
  else throw ConfigError("'out' must be csv or json");
  cfg.output.path = cfg.text("path", "");

  if (command == Command::Sweep) {
    SweepSpec s;
    s.target = parse_command(cfg.text("target", ""));
    if (s.target == Command::Sweep || s.target == Command::Validate) {
      throw ConfigError("cannot sweep '" + command_name(s.target) + "'");
    }
    s.parameter = cfg.text("parameter", "");
    const auto& tk = command_keys(s.target);
    if (std::find(tk.begin(), tk.end(), s.parameter) == tk.end()) {
      throw ConfigError("'" + s.parameter + "' is not a parameter of '" + command_name(s.target) + "'");
    }
    s.values = split_list(cfg.text("values", ""));
    if (s.values.empty()) throw ConfigError("sweep needs a non-empty 'values' list");
    // Keys that belong to neither the sweep nor its target are mistakes.
    for (const auto& [k, v] : cfg.values) {
      const bool shared = std::find(kSharedKeys.begin(), kSharedKeys.end(), k) != kSharedKeys.end();
      const bool own = k == "target" || k == "parameter" || k == "values";
      if (!shared && !own && std::find(tk.begin(), tk.end(), k) == tk.end()) {
        throw ConfigError("unknown key '" + k + "' for sweep target '" + command_name(s.target) + "'");
      }
    }
    cfg.sweep = s;
  }
  return cfg;
}

vacuum::VacuumProfile profile_from(const RunConfig& cfg) {
  const std::string kind = cfg.text("profile", "lorentz");
  try {
    if (kind == "lorentz") return vacuum::make_lorentz_profile(cfg.number("lambda2", 0.25), cfg.number("y0", 1.0));
    if (kind == "box") return vacuum::make_box_profile(cfg.number("k1", 0.5), cfg.number("k2", 3.0));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("'profile' must be lorentz or box");
}

cavity::CavityConfig cavity_from(const RunConfig& cfg) {
  cavity::CavityConfig c;
  c.alpha = cfg.number("alpha", 1.0);
  c.beta = cfg.number("beta", c.alpha);
  c.L = cfg.positive("gap", 1.0);
  c.dirichlet = cfg.flag("dirichlet", false);
  if (c.alpha < 0.0 || c.beta < 0.0) throw ConfigError("'alpha' and 'beta' must be non-negative");
  return c;
}

QuadratureSpec quadrature_from(const RunConfig& cfg) {
  QuadratureSpec s;
  s.rel_tol = cfg.positive("rel_tol", s.rel_tol);
  s.abs_tol = cfg.positive("abs_tol", s.abs_tol);
  s.max_subdivisions = cfg.integer("max_subdivisions", s.max_subdivisions);
  if (s.max_subdivisions < 1) throw ConfigError("'max_subdivisions' must be positive");
  return s;
}

RunConfig with_value(const RunConfig& cfg, const std::string& key, const std::string& value) {
  RunConfig out = cfg;
  if (cfg.sweep) {
    out.command = cfg.sweep->target;
    out.sweep.reset();
    out.values.erase("target");
    out.values.erase("parameter");
    out.values.erase("values");
  }
  out.values[key] = value;
  return out;
}

}  // namespace vacuumlab::cli
