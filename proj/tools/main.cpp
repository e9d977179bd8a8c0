#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "jmgrow/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Birth-growth process simulation and verification"};
  app.require_subcommand(1);

  jmgrow::RunOptions options;
  std::string config_path;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out_dir;

  auto* run = app.add_subcommand("run", "Run a Monte Carlo campaign from a config file");
  run->add_option("--config", config_path, "Path to the experiment config")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Override the master seed");
  auto* threads_opt = run->add_option("--threads", threads, "Override the worker count");
  auto* out_opt = run->add_option("--out", out_dir, "Override the output directory");
  run->add_flag("--dry-run", options.dry_run,
                "Print analytic predictions without sampling");

  int verify_threads = 0;
  bool inject_fault = false;
  auto* verify = app.add_subcommand("verify", "Run the self-check battery");
  verify->add_option("--threads", verify_threads, "Worker count for the sampling check");
  verify->add_flag("--inject-fault", inject_fault, "Perturb a closed form (battery must fail)")
      ->group("");  // hidden: only used to test the battery itself

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    options.config_path = config_path;
    if (seed_opt->count() > 0) options.seed = seed;
    if (threads_opt->count() > 0) options.threads = threads;
    if (out_opt->count() > 0) options.out_dir = out_dir;
    return jmgrow::cmd_run(options, std::cout, std::cerr);
  }
  return jmgrow::cmd_verify(
      verify_threads,
      inject_fault ? jmgrow::FaultInjection::MeanFormula : jmgrow::FaultInjection::None,
      std::cout);
}
