#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "config.hpp"

namespace coopaloha::cli {

enum exit_code : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_config = 2,
  exit_guard = 3,
  exit_non_convergence = 4,
  exit_infeasible = 5,
};

struct run_options {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  bool fast = false;
  bool allow_long_running = false;
  std::filesystem::path out = ".";
  std::string format = "csv";
  bool trace = false;
};

int cmd_analyze(const run_options& opts);
int cmd_simulate(const run_options& opts);
int cmd_optimize(const run_options& opts);
int cmd_bounds(const run_options& opts);
int cmd_compare(const run_options& opts);
int cmd_repro(const run_options& opts);

}  // namespace coopaloha::cli
