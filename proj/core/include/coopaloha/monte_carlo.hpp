#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "coopaloha/simulator.hpp"
#include "coopaloha/topology.hpp"

namespace coopaloha {

enum class frame_kind {
  frameless,        // threshold-terminated frameless ALOHA
  frameless_fixed,  // frameless ALOHA over a fixed T
  spatio_temporal,  // framed replica baseline over a fixed T
};

struct simulation_spec {
  explicit simulation_spec(network_topology topo, frame_kind k = frame_kind::frameless, std::vector<double> degrees = {},
                           double a = 0.8)
      : topology(std::move(topo)), kind(k), g(std::move(degrees)), alpha(a) {}

  network_topology topology;
  frame_kind kind = frame_kind::frameless;
  std::vector<double> g;              // frameless kinds
  double alpha = 0.8;                 // frameless
  std::uint64_t slot_cap = 0;         // frameless; 0 = default
  std::uint64_t slots = 0;            // fixed kinds
  replica_distribution lambda;        // spatio_temporal
};

struct trial_record {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  frame_result frame;
};

struct mean_stderr {
  double mean = 0.0;
  double std_error = 0.0;
};

struct simulation_summary {
  std::size_t trials = 0;
  mean_stderr throughput;
  mean_stderr slots;
  mean_stderr plr;
  std::vector<double> group_plr;  // mean per group
  std::size_t slot_cap_hits = 0;
  std::vector<trial_record> records;  // ordered by trial index
};

// Trials are independent frames seeded by trial_seed(master, trial); the
// summary does not depend on `workers`.
simulation_summary monte_carlo(const simulation_spec& spec, std::size_t trials, std::uint64_t master_seed,
                               unsigned workers = 1);

frame_result run_trial(const simulation_spec& spec, std::uint64_t seed);

}  // namespace coopaloha
