#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coopaloha {

// Set of base stations as a bitmask; BS 1 is the least significant bit.
using bs_mask = std::uint32_t;

inline constexpr int max_base_stations = 16;

struct group_spec {
  bs_mask bs_set = 0;
  std::uint64_t num_users = 0;

  friend bool operator==(const group_spec&, const group_spec&) = default;
};

// Partition of group indices whose target degrees are forced equal.
using tie_classes = std::vector<std::vector<std::size_t>>;

// Base stations, user groups and their connectivity. Groups are kept in
// ascending bitmask order, so for M <= 2 group i is the i-th non-empty subset.
// Immutable after construction.
class network_topology {
 public:
  network_topology(int num_bs, std::vector<group_spec> groups, tie_classes ties = {});

  int num_bs() const noexcept { return num_bs_; }
  std::size_t num_groups() const noexcept { return groups_.size(); }
  std::span<const group_spec> groups() const noexcept { return groups_; }
  const group_spec& group(std::size_t i) const { return groups_.at(i); }

  // Groups heard by base station `bs` (0-based).
  std::span<const std::size_t> groups_at(int bs) const { return groups_at_.at(static_cast<std::size_t>(bs)); }
  // Base stations (0-based) that hear group `i`.
  std::span<const int> stations_of(std::size_t i) const { return stations_of_.at(i); }
  std::size_t coverage(std::size_t i) const { return stations_of_.at(i).size(); }

  std::uint64_t total_users() const noexcept { return total_users_; }
  // Index of the group with the given BS set, or num_groups() if absent.
  std::size_t find_group(bs_mask set) const noexcept;

  // Explicit tie classes from the configuration (may be empty).
  const tie_classes& ties() const noexcept { return ties_; }

  friend bool operator==(const network_topology& a, const network_topology& b) {
    return a.num_bs_ == b.num_bs_ && a.groups_ == b.groups_ && a.ties_ == b.ties_;
  }

 private:
  int num_bs_;
  std::vector<group_spec> groups_;
  tie_classes ties_;
  std::vector<std::vector<std::size_t>> groups_at_;
  std::vector<std::vector<int>> stations_of_;
  std::uint64_t total_users_ = 0;
};

// All 2^M - 1 non-empty BS subsets in ascending bitmask order.
network_topology full_topology(int num_bs, std::span<const std::uint64_t> counts);

// Groups sharing the same coverage |S(u_i)| form one class.
tie_classes ties_by_coverage(const network_topology& topo);
// Every group on its own.
tie_classes singleton_ties(std::size_t num_groups);
// Explicit ties if the topology carries any, otherwise singleton classes.
tie_classes effective_ties(const network_topology& topo);

// JSON configuration:
//   { "num_bs": 2,
//     "groups": [ {"bs_set": [1], "num_users": 10000}, ... ],
//     "tie_classes": [[1, 2], [3]] }          // optional, 1-based indices
// `tie_classes` may also be the string "by_coverage".
network_topology load_topology(std::string_view config_text);
std::string to_config_text(const network_topology& topo);

std::string describe_bs_set(bs_mask set);

// Target degree G_i per group, with p_i = G_i / N_i.
struct target_degrees {
  std::vector<double> g;
};

// Throws config_error when G_i < 0 or G_i > N_i for a non-empty group.
std::vector<double> transmission_probabilities(const network_topology& topo, std::span<const double> g);

// Expand one value per tie class into one value per group.
std::vector<double> expand_ties(const tie_classes& ties, std::size_t num_groups, std::span<const double> per_class);

}  // namespace coopaloha
