#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "vacuumlab/errors.hpp"

namespace {

using vacuumlab::cli::Command;

struct Subcommand {
  Command command;
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::string> raw;
};

const char* describe(Command c) {
  switch (c) {
    case Command::Delta: return "Tabulate a delta sequence and its Fourier transform";
    case Command::Coulomb: return "Vacuum-averaged Coulomb potential and its sign change";
    case Command::Cavity: return "Two-delta cavity scattering coefficients or resonances";
    case Command::Casimir: return "Casimir pressure: 1+1 delta plates or the 3+1 breakdown";
    case Command::Stats: return "Renyi versus Shannon photon-count distributions";
    case Command::Shift: return "Radiative shift of a classical charge, optionally near a plane";
    case Command::Validate: return "Run the acceptance criteria";
    case Command::Sweep: return "Sweep one parameter of another command";
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = vacuumlab::cli;
  CLI::App app{"Numerical companion for vacuum-averaged field theory on a smeared vacuum"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "vacuumlab 1.0.0");

  std::vector<Subcommand> subs;
  for (Command c : {Command::Delta, Command::Coulomb, Command::Cavity, Command::Casimir, Command::Stats,
                    Command::Shift, Command::Validate, Command::Sweep}) {
    subs.push_back({c});
  }
  for (auto& s : subs) {
    s.app = app.add_subcommand(cli::command_name(s.command), describe(s.command));
    s.app->add_option("--config", s.config_path, "key = value file; flags override its entries");
    for (const auto& key : cli::allowed_keys(s.command)) {
      s.app->add_option("--" + key, s.raw[key]);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  for (auto& s : subs) {
    if (!s.app->parsed()) continue;
    try {
      cli::KeyValues flags;
      for (const auto& [key, value] : s.raw) {
        if (s.app->count("--" + key) > 0) flags[key] = value;
      }
      const cli::KeyValues file = s.config_path.empty() ? cli::KeyValues{} : cli::read_config_file(s.config_path);
      return cli::dispatch(cli::make_config(s.command, file, flags), std::cout);
    } catch (const vacuumlab::ConfigError& e) {
      std::cerr << "configuration error: " << e.what() << '\n';
      return 2;
    } catch (const vacuumlab::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 0;
}
