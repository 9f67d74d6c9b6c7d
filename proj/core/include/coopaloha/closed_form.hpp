#pragma once

#include <array>

#include "coopaloha/topology.hpp"

namespace coopaloha {

// Closed-form w_i for the full three-BS network. Groups use the labelling
//   u1={1}, u2={2}, u3={3}, u4={1,2}, u5={2,3}, u6={1,3}, u7={1,2,3},
// which differs from the ascending-bitmask order of network_topology; use
// m3_label_set() / m3_label_of() to convert.
struct m3_probes {
  std::array<double, 8> idle{};    // R_k, index 1..7
  std::array<double, 8> single{};  // C_k, index 1..7
  double sole = 0.0;               // r of the target group
};

bs_mask m3_label_set(int label);
int m3_label_of(bs_mask set);

// Targets 1, 4 and 7 are transcribed directly; 2, 3, 5, 6 follow from them by
// relabelling base stations. Throws config_error for labels outside 1..7.
double closed_form_w_m3(const m3_probes& probes, int target);

}  // namespace coopaloha
