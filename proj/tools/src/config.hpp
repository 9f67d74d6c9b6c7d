#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <coopaloha/evolution.hpp>
#include <coopaloha/monte_carlo.hpp>
#include <coopaloha/optimizer.hpp>
#include <coopaloha/simulator.hpp>
#include <coopaloha/topology.hpp>

namespace coopaloha::cli {

struct simulate_section {
  std::size_t trials = 100;
  frame_kind kind = frame_kind::frameless;
  std::uint64_t slot_cap = 0;
  std::uint64_t slots = 0;
  std::optional<double> load;  // fixed kinds: T from the normalized load
  replica_distribution lambda;
};

struct compare_section {
  std::vector<double> loads{0.3, 0.4, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 1.0};
  std::size_t trials = 50;
  frame_kind baseline = frame_kind::spatio_temporal;
  replica_distribution lambda;
};

struct bounds_section {
  std::vector<int> bs_counts{1, 2, 3, 4, 10};
  std::uint64_t users_per_group = 10000;
  double single_bs_degree = 3.098;
};

// One experiment file. Degrees are given either per group in the order the
// groups are listed, or per coverage class ({"by_coverage": [...]}).
struct experiment_config {
  std::string canonical_text;
  std::string label;
  std::optional<network_topology> topology;
  std::vector<double> g;  // canonical group order
  analysis_mode mode = analysis_mode::coop;
  double alpha = 0.8;
  std::vector<std::uint64_t> slots;  // explicit T grid
  std::size_t grid_points = 64;
  std::optional<std::uint64_t> seed;
  simulate_section simulate;
  compare_section compare;
  bounds_section bounds;
  de_parameters de;
  double lower = 0.0;
  double upper = 4.0;
};

experiment_config parse_config(std::string_view text);
experiment_config load_config_file(const std::string& path);

}  // namespace coopaloha::cli
