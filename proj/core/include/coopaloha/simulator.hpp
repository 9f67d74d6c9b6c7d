#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coopaloha/rng.hpp"
#include "coopaloha/topology.hpp"

namespace coopaloha {

enum class termination {
  threshold,     // floor(alpha N) packets retrieved
  slot_cap,      // gave up at the slot cap
  fixed_length,  // fixed frame, ran all T slots
};

const char* to_string(termination t);

struct frame_result {
  std::uint64_t slots = 0;
  std::vector<std::uint64_t> retrieved_per_group;
  std::uint64_t retrieved = 0;
  double throughput = 0.0;  // retrieved / slots
  termination terminated_by = termination::fixed_length;

  std::vector<double> group_plr(const network_topology& topo) const;
  double plr(const network_topology& topo) const;
};

// Joint SIC over all base stations with instant packet sharing. One bucket per
// (slot, BS) holds the count and xor of the un-retrieved users heard there;
// a count of one identifies the user directly. Retrieving a user removes it
// from every bucket at every BS, past slots included, and later transmissions
// of retrieved users are never added.
class sic_decoder {
 public:
  explicit sic_decoder(const network_topology& topo);

  std::size_t num_users() const noexcept { return group_of_.size(); }
  std::size_t group_of(std::uint32_t user) const { return group_of_.at(user); }
  std::uint32_t first_user(std::size_t group) const { return first_user_.at(group); }

  // Appends an empty slot and returns its index.
  std::uint64_t open_slot();
  std::uint64_t slots() const noexcept { return slots_; }

  // Records a transmission of `user` in `slot` at every BS of its group.
  // Ignored when the user is already retrieved.
  void transmit(std::uint32_t user, std::uint64_t slot);
  // Runs the peeling decoder to its fixpoint.
  void decode();

  bool retrieved(std::uint32_t user) const { return retrieved_.at(user) != 0; }
  std::uint64_t retrieved_count() const noexcept { return retrieved_total_; }
  const std::vector<std::uint64_t>& retrieved_per_group() const noexcept { return retrieved_per_group_; }

  // Number of un-retrieved users heard in (slot, bs); bs is 0-based.
  std::uint32_t bucket_load(std::uint64_t slot, int bs) const;
  // Un-retrieved users heard in (slot, bs), recomputed from replica lists.
  std::vector<std::uint32_t> bucket_members(std::uint64_t slot, int bs) const;

 private:
  struct bucket {
    std::uint32_t count = 0;
    std::uint32_t ids = 0;  // xor of member ids
  };

  void retrieve(std::uint32_t user);

  int num_bs_;
  std::vector<bs_mask> group_sets_;
  std::vector<std::vector<int>> group_stations_;
  std::vector<std::uint32_t> group_of_;
  std::vector<std::uint32_t> first_user_;
  std::vector<std::vector<std::uint64_t>> replicas_;
  std::vector<std::uint8_t> retrieved_;
  std::vector<std::uint64_t> retrieved_per_group_;
  std::uint64_t retrieved_total_ = 0;
  std::vector<bucket> buckets_;
  std::vector<std::size_t> ready_;
  std::uint64_t slots_ = 0;
};

// Default slot cap 10 N / M.
std::uint64_t default_slot_cap(const network_topology& topo);

// Frameless ALOHA: every user transmits in every slot with probability
// p_i = G_i / N_i; joint SIC after each slot; the frame stops at floor(alpha N)
// retrieved packets or at the slot cap (0 selects the default).
frame_result run_frame(const network_topology& topo, std::span<const double> g, double alpha, std::uint64_t seed,
                       std::uint64_t slot_cap = 0);

// Frameless ALOHA over exactly `slots` slots.
frame_result run_fixed_frame(const network_topology& topo, std::span<const double> g, std::uint64_t slots,
                             std::uint64_t seed);

// Replica-count distribution Lambda: mass[s] = Pr(s replicas), s >= 1.
struct replica_distribution {
  std::vector<double> mass;  // index 0 unused

  std::size_t max_degree() const noexcept { return mass.empty() ? 0 : mass.size() - 1; }
};

// Parses {"2": 1.0}-style text or "2:0.5,3:0.5".
replica_distribution parse_replica_distribution(std::string_view text);

// Framed spatio-temporal baseline: each user draws s ~ Lambda, transmits in s
// distinct uniformly chosen slots out of `slots`; joint SIC with sharing.
frame_result run_spatio_temporal(const network_topology& topo, const replica_distribution& lambda,
                                 std::uint64_t slots, std::uint64_t seed);

// Normalized load N / (M T) and normalized throughput retrieved / (M T).
double normalized_load(const network_topology& topo, std::uint64_t slots);
std::uint64_t slots_for_load(const network_topology& topo, double load);

// PLR floor: sum_i (N_i / N) (1 - p_i)^T, the chance a user never transmits.
double silent_user_floor(const network_topology& topo, std::span<const double> g, std::uint64_t slots);

}  // namespace coopaloha
