// Experiment CLI: one config file per run, subcommand selects the experiment.
// Reruns with the same config and seed produce byte-identical outputs.

#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "roughflow/cli/commands.hpp"
#include "roughflow/core/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"roughflow: rough-driver and rough-flow experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  uint64_t seed_override = 0;
  bool has_seed = false;
  int threads = static_cast<int>(std::thread::hardware_concurrency());

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "path to the JSON config file")->required();
    sub->add_option("--out", out_override, "override the output directory");
    sub->add_option("--seed", seed_override, "override the master seed")
        ->each([&](const std::string&) { has_seed = true; });
    sub->add_option("--threads", threads, "worker pool size (default: logical cores)");
  };

  const char* names[] = {"flow_solve", "wong_zakai", "diagnostics", "schilder",
                         "ito_check"};
  for (const char* name : names) add_common(app.add_subcommand(name));

  CLI11_PARSE(app, argc, argv);

  roughflow::set_worker_count(threads);

  try {
    roughflow::ExperimentConfig cfg = roughflow::ExperimentConfig::from_file(config_path);
    cfg.kind = app.get_subcommands().front()->get_name();
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (const char* env_out = std::getenv("ROUGHFLOW_OUT"); env_out && out_override.empty())
      cfg.out_dir = env_out;
    if (has_seed) cfg.seed = seed_override;
    return roughflow::run_command(cfg, std::cout);
  } catch (const roughflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return roughflow::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return roughflow::kExitConfigError;
  }
}
