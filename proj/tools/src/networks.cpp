#include "networks.hpp"

#include <algorithm>

#include <coopaloha/error.hpp>

namespace coopaloha::cli {

std::vector<double> degrees_by_coverage(const network_topology& topo, std::span<const double> per_coverage) {
  std::vector<double> g(topo.num_groups());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto c = topo.coverage(i);
    if (c > per_coverage.size()) throw config_error("by_coverage lists too few values");
    g[i] = per_coverage[c - 1];
  }
  return g;
}

network_topology symmetric_network(int num_bs, std::uint64_t users_per_group) {
  std::vector<std::uint64_t> counts((std::size_t{1} << num_bs) - 1, users_per_group);
  auto topo = full_topology(num_bs, counts);
  return network_topology(num_bs, std::vector<group_spec>(topo.groups().begin(), topo.groups().end()),
                          ties_by_coverage(topo));
}

std::vector<double> symmetric_reference_degrees(int num_bs) {
  switch (num_bs) {
    case 1: return {3.10};
    case 2: return {1.81, 1.68};
    case 3: return {1.11, 0.94, 0.78};
    case 4: return {0.69, 0.52, 0.46, 0.46};
    default: throw config_error("no reference degrees for M = " + std::to_string(num_bs));
  }
}

double symmetric_reference_peak(int num_bs) {
  static const double peaks[] = {0.874, 1.676, 2.366, 2.940};
  if (num_bs < 1 || num_bs > 4) throw config_error("no reference peak for M = " + std::to_string(num_bs));
  return peaks[num_bs - 1];
}

double symmetric_reference_simulated(int num_bs) {
  static const double sims[] = {0.867, 1.673, 2.363, 2.936};
  if (num_bs < 1 || num_bs > 4) throw config_error("no reference simulation for M = " + std::to_string(num_bs));
  return sims[num_bs - 1];
}

const std::vector<asymmetric_row>& asymmetric_rows() {
  static const std::vector<asymmetric_row> rows{
      {'a', 0, 10000, 0.0, 3.098, 0.874, 0.867},      {'b', 100, 10000, 1.388, 3.094, 0.893, 0.890},
      {'c', 1000, 10000, 1.621, 3.063, 1.064, 1.060}, {'d', 10000, 10000, 1.812, 1.680, 1.676, 1.673},
      {'e', 10000, 1000, 3.051, 1.869, 1.836, 1.829}, {'f', 10000, 100, 3.096, 0.302, 1.758, 1.746},
      {'g', 10000, 0, 3.098, 0.0, 1.748, 1.736},
  };
  return rows;
}

network_topology asymmetric_network(std::uint64_t n1, std::uint64_t n3) {
  // Canonical order is {1}, {2}, {1,2}.
  return network_topology(2, {{0b01, n1}, {0b10, n1}, {0b11, n3}}, {{0, 1}, {2}});
}

std::vector<double> asymmetric_degrees(const asymmetric_row& row) { return {row.g1, row.g1, row.g3}; }

std::vector<double> uniform_baseline_degrees(const network_topology& topo, double single_bs_degree) {
  std::uint64_t busiest = 0;
  for (int j = 0; j < topo.num_bs(); ++j) {
    std::uint64_t load = 0;
    for (auto i : topo.groups_at(j)) load += topo.group(i).num_users;
    busiest = std::max(busiest, load);
  }
  if (busiest == 0) throw config_error("network has no users");
  const double p = std::min(1.0, single_bs_degree / static_cast<double>(busiest));
  std::vector<double> g(topo.num_groups());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = p * static_cast<double>(topo.group(i).num_users);
  return g;
}

network_topology delta2_network(std::uint64_t scale) {
  // N7 = N1 + N2 + N3 keeps the user-weighted coverage at 2.
  return network_topology(
      3, {{0b001, scale}, {0b010, scale}, {0b100, scale}, {0b011, 3 * scale / 4}, {0b111, 3 * scale}});
}

std::vector<double> delta2_degrees(double g1, double g3, double g4, double g7, const network_topology& topo) {
  std::vector<double> g(topo.num_groups(), 0.0);
  g.at(topo.find_group(0b001)) = g1;
  g.at(topo.find_group(0b010)) = g1;
  g.at(topo.find_group(0b100)) = g3;
  g.at(topo.find_group(0b011)) = g4;
  g.at(topo.find_group(0b111)) = g7;
  return g;
}

std::vector<double> delta2_reference_degrees(const network_topology& topo) {
  return delta2_degrees(1.42, 1.30, 0.47, 2.33, topo);
}

tie_classes delta2_ties(const network_topology& topo) {
  return {{topo.find_group(0b001), topo.find_group(0b010)},
          {topo.find_group(0b100)},
          {topo.find_group(0b011)},
          {topo.find_group(0b111)}};
}

}  // namespace coopaloha::cli
