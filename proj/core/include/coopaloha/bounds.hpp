#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "coopaloha/evolution.hpp"
#include "coopaloha/topology.hpp"

namespace coopaloha {

// Asymptotic single-BS peak throughput of frameless ALOHA.
inline constexpr double single_bs_peak_throughput = 0.87;

// S^c <= M * S_1. Throws config_error for M < 1.
double upper_bound_throughput(int num_bs);

// Solves Q y = b by Gaussian elimination with partial pivoting. Returns
// nullopt when a pivot falls below `singular_tol` (relative to the largest
// entry of Q).
std::optional<std::vector<double>> solve_linear(std::vector<double> q, std::vector<double> b, std::size_t n,
                                                double singular_tol = 1e-14);

struct union_bound {
  double value = 0.0;
  bool singular = false;  // Q was singular; value is max_a p_a
};

// Lower bound p Q^{-1} p^t on Pr(union of A_a), with p_a = Pr(A_a) and
// Q_ab = Pr(A_a and A_b) (row-major, n x n). Clamped to [max_a p_a, min(1, sum_a p_a)].
union_bound union_lower_bound(std::span<const double> p, std::span<const double> q);

// Evolution where the retrieval probability of each group is replaced by the
// union lower bound over "retrieved at BS j" events, only the target group's
// own packets being shared. Requires G_i > 0 for every non-empty group.
evolution_result evolve_bound(const network_topology& topo, std::span<const double> g, std::uint64_t slots,
                              const evolution_options& opts = {});

}  // namespace coopaloha
