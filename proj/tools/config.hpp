#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vacuumlab/cavity.hpp"
#include "vacuumlab/quadrature.hpp"
#include "vacuumlab/vacuum.hpp"

namespace vacuumlab::cli {

enum class Command { Delta, Coulomb, Cavity, Casimir, Stats, Shift, Validate, Sweep };
enum class Format { Csv, Json };

using KeyValues = std::map<std::string, std::string>;

struct OutputSpec {
  Format format = Format::Csv;
  std::string path;  // empty: standard output
};

struct SweepSpec {
  Command target = Command::Casimir;
  std::string parameter;
  std::vector<std::string> values;
};

// A validated run. `values` holds every parameter as raw text, keyed by the
// flag name without dashes; typed access goes through the getters, which
// throw ConfigError on malformed or out-of-range input.
struct RunConfig {
  Command command = Command::Validate;
  KeyValues values;
  OutputSpec output;
  std::optional<SweepSpec> sweep;

  bool has(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  double positive(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<double> list(const std::string& key) const;
};

Command parse_command(const std::string& name);
std::string command_name(Command command);

// Parameter keys a command accepts, besides the shared output and
// quadrature keys.
const std::vector<std::string>& command_keys(Command command);
// Every key `command` accepts.
std::vector<std::string> allowed_keys(Command command);

// `key = value` lines; `#` starts a comment; blank lines are skipped.
KeyValues parse_key_values(std::istream& in);
KeyValues read_config_file(const std::string& path);

// Merges file values with flag values (flags win), checks every key against
// the command, and extracts the output and sweep blocks.
RunConfig make_config(Command command, const KeyValues& file_values, const KeyValues& flag_values);

vacuum::VacuumProfile profile_from(const RunConfig& cfg);
cavity::CavityConfig cavity_from(const RunConfig& cfg);
QuadratureSpec quadrature_from(const RunConfig& cfg);

// The configuration with one key replaced, for sweep rows.
RunConfig with_value(const RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace vacuumlab::cli
