#include <iostream>

#include <CLI11.hpp>

#include "rpcm/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"rpcmlab: a laboratory for annealed random piecewise convex interval maps"};

  std::string command, config_path, out_dir, example_id;
  std::uint64_t seed = 0;
  bool seed_set = false, out_set = false;
  int threads = -1;

  app.add_option("--command", command,
                 "one of validate | sequences | induced | ulam | simulate | asymptotics | "
                 "reproduce")
      ->required();
  app.add_option("--config", config_path, "experiment config (JSON)");
  app.add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
    seed_set = true;
  });
  app.add_option("--out", out_dir, "output directory")->each([&](const std::string&) {
    out_set = true;
  });
  app.add_option("--threads", threads, "worker threads (0 = auto)");
  app.add_option("--example", example_id, "canned experiment id for reproduce");

  CLI11_PARSE(app, argc, argv);

  try {
    rpcm::ExperimentConfig cfg;
    if (!config_path.empty()) {
      cfg = rpcm::ExperimentConfig::from_file(config_path);
    } else if (command != "reproduce") {
      std::cerr << "--config is required for " << command << "\n";
      return 2;
    } else {
      cfg.family = "dyadic";
      cfg.nu_a = {.type = "dirac", .value = 0.0};
      cfg.nu_b = {.type = "dirac", .value = 0.0};
    }
    rpcm::RunOptions opt;
    if (seed_set) opt.seed = seed;
    if (out_set) opt.out_dir = out_dir;
    if (threads >= 0) opt.threads = threads;
    opt.example_id = example_id;
    return rpcm::run_command(command, cfg, opt, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
