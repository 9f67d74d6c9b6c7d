#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coopaloha/evolution.hpp"

namespace coopaloha {

struct curve_point {
  std::uint64_t slots = 0;
  std::vector<double> plr;
  double plr_avg = 1.0;
  double throughput = 0.0;
  bool converged = true;
};

struct plr_curve {
  std::vector<curve_point> points;
  std::size_t peak = 0;  // index of the largest throughput
};

// Evaluates every T of an ascending, non-empty grid.
plr_curve compute_plr_curve(const analyzer& an, std::span<const double> g, std::span<const std::uint64_t> slots);

struct slot_range {
  std::uint64_t min = 1;
  std::uint64_t max = 1;
};

// [ceil(0.5 N / (M S_1)), ceil(2 N / M)].
slot_range default_slot_range(const network_topology& topo);

struct peak_options {
  slot_range range{0, 0};   // {0, 0} selects default_slot_range
  std::size_t coarse_points = 48;
  std::size_t refine_points = 8;
  // Times the range may be widened when the maximum sits on an edge.
  int max_extensions = 4;
};

struct peak_result {
  std::uint64_t slots = 0;  // T*
  double throughput = 0.0;  // S(T*)
  double plr_avg = 1.0;     // p_e(T*)
  std::vector<double> plr;
  bool converged = true;
  std::size_t evaluations = 0;
};

// sup_T S(T) over integer T: a coarse scan, then repeated finer scans of the
// bracket around the best point until the step is one slot.
peak_result find_peak(const analyzer& an, std::span<const double> g, const peak_options& opts = {});

// Gamma = peak cooperative throughput / peak non-cooperative throughput.
double diversity_gain(double coop_peak, double noncoop_peak);

}  // namespace coopaloha
