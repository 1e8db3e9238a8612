#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace vacuumlab::cli {

// One output artifact. Cells are JSON scalars (numbers or strings); `notes`
// become `#` rows above the CSV header, `summary` is a side report (for
// example the Coulomb sign-change radius).
struct Table {
  std::vector<std::string> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
  nlohmann::json summary = nlohmann::json::object();
};

// The full artifact of a single command.
Table run_table(const RunConfig& cfg);

// A single row characterizing the run, used as one line of a sweep.
Table summary_row(const RunConfig& cfg);

// One summary row per sweep value, in the order given.
Table run_sweep(const RunConfig& cfg);

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

// Runs the command and writes its artifact to cfg.output.path, or to `out`
// when the path is empty. A CSV written to a file with a non-empty summary
// gets a companion `<path>.summary.json`. Returns the process exit status:
// non-zero when `validate` finds a failing criterion.
int dispatch(const RunConfig& cfg, std::ostream& out);

}  // namespace vacuumlab::cli
