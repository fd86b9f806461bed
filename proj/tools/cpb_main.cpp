#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cpb/experiments.hpp"

namespace {

int run(cpb::Experiment experiment, const std::string& config_path,
        const std::string& out_dir, int threads, long long seed,
        bool have_seed) {
  cpb::RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot open config file '" << config_path
                  << "'\n";
        return 2;
      }
      std::ostringstream text;
      text << in.rdbuf();
      cfg = cpb::parse_config(text.str());
    } else {
      cfg = cpb::default_config();
    }
    cfg.experiment = experiment;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (threads > 0) cfg.threads = threads;
    if (have_seed) cfg.seed = (std::uint64_t)seed;
    cfg.validate();
  } catch (const cpb::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    const cpb::ExperimentOutput out = cpb::run_experiment(cfg);
    for (const auto& f : out.files) std::cout << f << "\n";
  } catch (const cpb::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooper-pair box refrigerator simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = 0;
  long long seed = 0;
  app.add_option("--config", config_path, "JSON run configuration")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--threads", threads, "Worker threads for sweeps");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed");

  const std::pair<const char*, cpb::Experiment> experiments[] = {
      {"spectrum", cpb::Experiment::spectrum},
      {"one_tone", cpb::Experiment::one_tone},
      {"two_tone", cpb::Experiment::two_tone},
      {"otto_sweep", cpb::Experiment::otto_sweep},
      {"filter", cpb::Experiment::filter},
  };
  for (const auto& [name, exp] : experiments)
    app.add_subcommand(name, std::string("Run the ") + name + " experiment")
        ->fallthrough();

  CLI11_PARSE(app, argc, argv);

  for (const auto& [name, exp] : experiments)
    if (app.got_subcommand(name))
      return run(exp, config_path, out_dir, threads, seed,
                 seed_opt->count() > 0);
  return 2;
}
