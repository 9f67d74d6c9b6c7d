#include <CLI11.hpp>
#include <cstdio>
#include <thread>

#include <coopaloha/error.hpp>
#include <coopaloha/export.hpp>

#include "commands.hpp"

using namespace coopaloha;
using namespace coopaloha::cli;

int main(int argc, char** argv) {
  CLI::App app{"Frameless ALOHA with multi-BS cooperation: analysis, simulation, optimization"};
  app.set_version_flag("--version", std::string(library_version()));
  app.require_subcommand(1);
  app.fallthrough();

  run_options opts;
  opts.workers = std::max(1U, std::thread::hardware_concurrency());
  std::string config;
  std::uint64_t seed = 0;
  auto* config_opt = app.add_option("--config", config, "Experiment config (JSON)")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides the config)");
  app.add_option("--workers", opts.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--fast", opts.fast, "Scaled-down settings for smoke runs");
  app.add_flag("--allow-long-running", opts.allow_long_running, "Permit exact analysis with 8..15 groups");
  app.add_option("--out", opts.out, "Output directory");
  app.add_option("--format", opts.format, "Primary output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--trace", opts.trace, "analyze: write the per-iteration retrieval split");

  int (*command)(const run_options&) = nullptr;
  auto bind = [&](const char* name, const char* help, int (*fn)(const run_options&)) {
    app.add_subcommand(name, help)->callback([&command, fn] { command = fn; });
  };
  bind("analyze", "Density-evolution PLR curve and peak throughput", cmd_analyze);
  bind("simulate", "Monte Carlo frames", cmd_simulate);
  bind("optimize", "Differential-evolution search over target degrees", cmd_optimize);
  bind("bounds", "Diversity gain with lower and upper throughput bounds per M", cmd_bounds);
  bind("compare", "Frameless vs spatio-temporal baseline over a load sweep", cmd_compare);
  bind("repro", "Run the acceptance checks (scaled down with --fast)", cmd_repro);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_config;
  }
  if (*config_opt) opts.config_path = config;
  if (*seed_opt) opts.seed = seed;

  try {
    return command(opts);
  } catch (const error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    switch (e.kind()) {
      case error_kind::config: return exit_config;
      case error_kind::guard_refusal: return exit_guard;
      case error_kind::non_convergence: return exit_non_convergence;
      default: return exit_failure;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_failure;
  }
}
