#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <coopaloha/topology.hpp>

namespace coopaloha::cli {

// Degrees per group from a per-coverage list (index 0 = coverage 1).
std::vector<double> degrees_by_coverage(const network_topology& topo, std::span<const double> per_coverage);

// All 2^M - 1 groups with the same size, tied by coverage.
network_topology symmetric_network(int num_bs, std::uint64_t users_per_group = 10000);

// Optimized degrees per coverage class of symmetric_network(M), M = 1..4.
std::vector<double> symmetric_reference_degrees(int num_bs);
double symmetric_reference_peak(int num_bs);
double symmetric_reference_simulated(int num_bs);

// Two BSs, groups {1}, {2} with n1 users each and {1,2} with n3 users,
// G_{1} = G_{2} tied. Rows (a)..(g) of the asymmetric study.
struct asymmetric_row {
  char name;
  std::uint64_t n1;
  std::uint64_t n3;
  double g1;
  double g3;
  double peak;
  double simulated;
};
const std::vector<asymmetric_row>& asymmetric_rows();
network_topology asymmetric_network(std::uint64_t n1, std::uint64_t n3);
std::vector<double> asymmetric_degrees(const asymmetric_row& row);

// Non-cooperative baseline: every user transmits with p = G_1 / (users per BS),
// the single-BS optimum spread over the busiest BS.
std::vector<double> uniform_baseline_degrees(const network_topology& topo, double single_bs_degree = 3.098);

// Three BSs with groups {1}, {2}, {3}, {1,2}, {1,2,3}; average spatial degree 2.
network_topology delta2_network(std::uint64_t scale = 2000);
// (G_{1}, G_{2}, G_{3}, G_{1,2}, G_{1,2,3}) mapped to canonical order.
std::vector<double> delta2_degrees(double g1, double g3, double g4, double g7, const network_topology& topo);
std::vector<double> delta2_reference_degrees(const network_topology& topo);
tie_classes delta2_ties(const network_topology& topo);

}  // namespace coopaloha::cli
