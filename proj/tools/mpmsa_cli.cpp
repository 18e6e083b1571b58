#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mpmsa/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Multi-particle multiscale analysis experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<long long> trials;
  std::optional<std::string> out;
  app.add_option("--config", config_path, "sectioned key = value configuration file");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--trials", trials, "number of Monte Carlo trials or instances");
  app.add_option("--out", out, "output directory");
  for (const std::string& kind : mpmsa::experiment_kinds()) app.add_subcommand(kind, "run the " + kind + " experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return mpmsa::exit_invalid;
  }

  mpmsa::ExperimentConfig config;
  try {
    if (!config_path.empty()) config = mpmsa::load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return mpmsa::exit_invalid;
  }
  config.kind = app.get_subcommands().front()->get_name();
  if (seed) config.seed = *seed;
  if (trials) config.trials = *trials;
  if (out) config.out = *out;
  return mpmsa::run(config, std::cerr);
}
