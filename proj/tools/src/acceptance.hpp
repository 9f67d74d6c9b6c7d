#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <coopaloha/topology.hpp>

namespace coopaloha::cli {

struct check_result {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct acceptance_options {
  // Fewer trials and generations, M = 3 optimization skipped.
  bool scaled = false;
  unsigned workers = 1;
  std::uint64_t seed = 1;
  bool allow_long_running = true;
  std::filesystem::path cache_dir;
};

// Runs checks 1..9 in order, reporting each as it finishes.
std::vector<check_result> run_acceptance(const acceptance_options& opts,
                                         const std::function<void(const check_result&)>& on_result = {});

check_result check_symmetric_peaks(const acceptance_options& opts);
check_result check_symmetric_optimizer(const acceptance_options& opts);
check_result check_asymmetric_peaks(const acceptance_options& opts);
check_result check_monte_carlo(const acceptance_options& opts);
check_result check_closed_form(const acceptance_options& opts);
check_result check_gain_and_bounds(const acceptance_options& opts);
check_result check_baseline_comparison(const acceptance_options& opts);
check_result check_small_instance(const acceptance_options& opts);
check_result check_invariants(const acceptance_options& opts);

std::string format_check(const check_result& r);

// Distribution of the number of retrieved packets after exactly `slots`
// slots, summed over every transmission realization with exact joint SIC.
// Needs total_users * slots <= 30.
std::vector<double> exhaustive_retrieval_distribution(const network_topology& topo, std::span<const double> g,
                                                      std::uint64_t slots);

// 1..max_bs BSs, distinct non-empty BS sets, group sizes in [1, max_users].
network_topology random_topology(std::mt19937_64& rng, int max_bs, std::uint64_t max_users);

}  // namespace coopaloha::cli
