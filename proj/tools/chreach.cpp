#include "chreach/cli/run.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"chreach: convex-hull reachability analysis"};
  app.require_subcommand(1);

  std::string config_path;
  chreach::cli::RunOptions opts;

  auto* run_cmd = app.add_subcommand("run", "run an experiment config");
  run_cmd->add_option("config", config_path, "experiment config (JSON)")
      ->required();
  run_cmd->add_option("--out", opts.out_dir, "output directory override");
  run_cmd->add_option("--threads", opts.threads,
                      "worker threads (overrides CHREACH_THREADS)");
  run_cmd->add_option("--seeds", opts.seeds,
                      "number of seeded runs (spacecraft-mpc)");

  std::string validate_path;
  auto* validate_cmd =
      app.add_subcommand("validate", "validate a config against the schema");
  validate_cmd->add_option("config", validate_path, "experiment config (JSON)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (run_cmd->parsed()) return chreach::cli::run(config_path, opts);
  return chreach::cli::validate_only(validate_path);
}
