#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <span>
#include <vector>

#include "coopaloha/evolution.hpp"
#include "coopaloha/peak_search.hpp"
#include "coopaloha/topology.hpp"

namespace coopaloha {

struct de_parameters {
  std::size_t population = 300;
  double mutant_factor = 0.2;
  std::size_t generations = 30;
  double crossover_rate = 0.9;

  // 50 candidates, 15 generations.
  static de_parameters fast() { return {50, 0.2, 15, 0.9}; }
};

struct optimization_spec {
  explicit optimization_spec(network_topology topo) : topology(std::move(topo)) {}

  network_topology topology;
  double alpha = 0.8;
  tie_classes ties;  // empty: effective_ties(topology)
  double lower = 0.0;
  double upper = 4.0;
  de_parameters de;
  analysis_mode mode = analysis_mode::coop;
  peak_options peak;
  analyzer::options analysis;
};

struct fitness_value {
  double score = 0.0;       // throughput if feasible, else -(shortfall)
  double throughput = 0.0;  // sup_T S(T)
  std::uint64_t slots = 0;  // T*
  double plr_avg = 1.0;     // p_e(T*)
  bool feasible = false;    // 1 - p_e(T*) > alpha and the evolution converged
};

struct optimization_result {
  std::vector<double> class_values;  // one G per tie class
  std::vector<double> g;             // expanded per group
  fitness_value best;
  std::vector<double> history;       // best score after each generation (index 0 = initial population)
  std::size_t evaluations = 0;       // distinct candidates analysed
};

// DE/rand/1/bin over the tie-class values with death-penalty constraint
// handling. Candidates are snapped to a 1e-4 grid and their fitness cached.
class degree_optimizer {
 public:
  explicit degree_optimizer(optimization_spec spec);
  // Reuses a prepared analyzer (its topology must match).
  degree_optimizer(optimization_spec spec, std::shared_ptr<const analyzer> an);

  const optimization_spec& spec() const noexcept { return spec_; }
  const tie_classes& ties() const noexcept { return ties_; }
  std::pair<double, double> class_bounds(std::size_t cls) const { return bounds_.at(cls); }

  fitness_value fitness(std::span<const double> class_values) const;
  fitness_value fitness_of_groups(std::span<const double> g) const;

  optimization_result optimize(std::uint64_t seed, unsigned workers = 1) const;

 private:
  fitness_value evaluate(std::span<const double> g) const;

  optimization_spec spec_;
  tie_classes ties_;
  std::vector<std::pair<double, double>> bounds_;
  std::shared_ptr<const analyzer> analyzer_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::vector<std::int64_t>, fitness_value> cache_;
};

// Snap to the 1e-4 grid used for caching.
double quantize_degree(double g);

}  // namespace coopaloha
