#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "coopaloha/topology.hpp"
#include "coopaloha/walk_graph.hpp"

namespace coopaloha {

enum class analysis_mode {
  coop,     // joint SIC with packet sharing, exact walk-graph enumeration
  noncoop,  // every BS decodes alone; w_i is the product over its BSs
  bound,    // union lower bound on retrieval, i.e. an upper bound on PLR
};

const char* to_string(analysis_mode mode);
analysis_mode parse_analysis_mode(std::string_view text);

struct evolution_options {
  int max_iter = 2000;
  double tol = 1e-10;
  bool trace = false;
};

// Per-iteration split of the retrieval probability of every group,
// r_i * (singleton part) and r_i * (collided part).
struct trace_point {
  int iteration = 0;
  std::vector<double> singleton;
  std::vector<double> collided;
};

struct evolution_result {
  std::vector<double> plr;  // p_{e,i}(T)
  std::vector<double> x;    // final x_i (coop/bound) or max_j x_{i,j} (noncoop)
  std::vector<double> w;    // final w_i (noncoop: product over BSs)
  int iterations = 0;
  bool converged = false;
  // Bound mode only: some Q matrix was singular and the largest single-BS
  // term was used instead.
  bool singular_fallback = false;
  std::vector<trace_point> trace;
};

// R_k, C_k and r_k of one group for a given x_k.
struct slot_terms {
  double idle = 1.0;    // R(1 - x)  = (1 - p x)^N
  double single = 0.0;  // N p x (1 - p x)^(N - 1)
  double sole = 1.0;    // rho(1 - x) = (1 - p x)^(N - 1)
};
slot_terms group_slot_terms(std::uint64_t group_size, double p, double x);

evolution_result evolve_noncoop(const network_topology& topo, std::span<const double> g, std::uint64_t slots,
                                const evolution_options& opts = {});

evolution_result evolve_coop(const network_topology& topo, const retrieval_model& model, std::span<const double> g,
                             std::uint64_t slots, const evolution_options& opts = {});

// Throughput S(T) = sum_i N_i (1 - p_{e,i}) / T.
double throughput(const network_topology& topo, std::span<const double> plr, std::uint64_t slots);
// p_e(T) = sum_i (N_i / N) p_{e,i}.
double average_plr(const network_topology& topo, std::span<const double> plr);

// Dispatches evolution for one mode; holds the retrieval model for coop.
class analyzer {
 public:
  struct options {
    evolution_options evolution;
    retrieval_model::options retrieval;
  };

  analyzer(network_topology topo, analysis_mode mode, const options& opts);
  // Shares an existing retrieval model (must match the topology).
  analyzer(network_topology topo, std::shared_ptr<const retrieval_model> model, const evolution_options& evo);

  const network_topology& topology() const noexcept { return topo_; }
  analysis_mode mode() const noexcept { return mode_; }
  const evolution_options& evolution() const noexcept { return evo_; }
  std::shared_ptr<const retrieval_model> model() const noexcept { return model_; }

  evolution_result evolve(std::span<const double> g, std::uint64_t slots) const;
  evolution_result evolve(std::span<const double> g, std::uint64_t slots, const evolution_options& evo) const;

 private:
  network_topology topo_;
  analysis_mode mode_;
  evolution_options evo_;
  std::shared_ptr<const retrieval_model> model_;
};

}  // namespace coopaloha
