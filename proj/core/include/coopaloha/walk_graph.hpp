#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "coopaloha/topology.hpp"

namespace coopaloha {

// Edge state of one user node in a walk graph (a per-slot snapshot).
enum class node_state : std::uint8_t {
  idle = 0,      // no un-retrieved transmission from the group
  single = 1,    // exactly one un-retrieved packet
  collided = 2,  // two or more un-retrieved packets
};

// Exact enumeration is refused above this many groups (3^14 companion patterns).
inline constexpr std::size_t max_exact_groups = 15;

// Connectivity of the walk graph: user nodes (groups) and BS nodes.
class walk_graph {
 public:
  explicit walk_graph(const network_topology& topo);

  std::size_t num_groups() const noexcept { return masks_.size(); }
  int num_bs() const noexcept { return num_bs_; }

  // Peels single-state user nodes off BS nodes of total multiplicity one
  // until nothing changes. Returns the bitmask of peeled groups.
  std::uint32_t peel(std::span<const node_state> states) const;

  bool retrievable(std::span<const node_state> states, std::size_t target) const {
    return (peel(states) >> target) & 1U;
  }
  // Target is a singleton at one of its BSs before any peeling.
  bool initial_singleton(std::span<const node_state> states, std::size_t target) const;

 private:
  int num_bs_;
  std::vector<bs_mask> masks_;
};

// Companion patterns: all groups except the target, mixed radix base 3, the
// first non-target group being the least significant digit. The target is
// fixed in state `single`.
class pattern_space {
 public:
  pattern_space(std::size_t num_groups, std::size_t target);

  std::size_t num_groups() const noexcept { return num_groups_; }
  std::size_t target() const noexcept { return target_; }
  std::uint64_t size() const noexcept { return size_; }

  std::vector<node_state> decode(std::uint64_t index) const;
  std::uint64_t encode(std::span<const node_state> states) const;
  // Group that digit `d` refers to.
  std::size_t group_of_digit(std::size_t d) const noexcept { return d < target_ ? d : d + 1; }

 private:
  std::size_t num_groups_;
  std::size_t target_;
  std::uint64_t size_;
};

// Set of companion patterns from which the target packet is retrievable,
// stored as a bitset over pattern indices. Depends only on connectivity.
class retrievability_table {
 public:
  static retrievability_table build(const network_topology& topo, std::size_t target, unsigned workers = 1);

  const pattern_space& space() const noexcept { return space_; }
  std::size_t target() const noexcept { return space_.target(); }
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  bool contains(std::uint64_t index) const { return (words_.at(index >> 6) >> (index & 63)) & 1U; }
  std::uint64_t count() const noexcept;
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  // Versioned binary format:
  //   magic "CATB" | u32 version | u64 fingerprint | u32 groups | u32 target
  //   | u64 pattern count | u64 word count | words (little endian)
  void save(std::ostream& out) const;
  static retrievability_table load(std::istream& in, const network_topology& topo, std::size_t target);

  friend bool operator==(const retrievability_table& a, const retrievability_table& b) {
    return a.fingerprint_ == b.fingerprint_ && a.space_.target() == b.space_.target() && a.words_ == b.words_;
  }

 private:
  retrievability_table(pattern_space space, std::uint64_t fingerprint, std::vector<std::uint64_t> words)
      : space_(space), fingerprint_(fingerprint), words_(std::move(words)) {}

  pattern_space space_;
  std::uint64_t fingerprint_;
  std::vector<std::uint64_t> words_;
};

// Hash of the canonical connectivity (num_bs and the ordered BS sets).
std::uint64_t connectivity_fingerprint(const network_topology& topo);

// P^(r0) and P^(r1) of one target, both without the leading r_target factor.
struct retrieval_split {
  double singleton = 0.0;  // target is a singleton at some BS before peeling
  double collided = 0.0;   // target only freed by peeling other groups

  double total() const noexcept { return singleton + collided; }
};

// Reduced ternary decision diagram over the companion groups. Each internal
// node branches on one group's state; a node whose three branches coincide is
// skipped because R + C + (1 - R - C) = 1. Evaluating the diagram sums the
// pattern probabilities of the whole table in O(nodes).
class retrieval_diagram {
 public:
  explicit retrieval_diagram(const retrievability_table& table, const network_topology& topo);

  std::size_t target() const noexcept { return target_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  // idle[k] = R_k, single[k] = C_k for every group k (target entry ignored).
  retrieval_split evaluate(std::span<const double> idle, std::span<const double> single) const;

 private:
  struct node {
    std::uint32_t group;
    std::uint32_t child[3];
  };
  // ids 0..2 are terminals: not retrievable, singleton, collided.
  static constexpr std::uint32_t terminal_count = 3;

  std::size_t target_;
  std::vector<node> nodes_;
  std::uint32_t root_;
};

// Probability-independent tables and diagrams for every group of a topology.
class retrieval_model {
 public:
  struct options {
    unsigned workers = 1;
    bool allow_long_running = false;
    // Directory for persisted tables; empty disables the cache.
    std::filesystem::path cache_dir;
  };

  retrieval_model(const network_topology& topo, const options& opts);

  std::size_t num_groups() const noexcept { return diagrams_.size(); }
  const retrievability_table& table(std::size_t target) const { return tables_.at(target); }
  const retrieval_diagram& diagram(std::size_t target) const { return diagrams_.at(target); }

 private:
  std::vector<retrievability_table> tables_;
  std::vector<retrieval_diagram> diagrams_;
};

// Guard for exact analysis: more than 7 groups needs the long-running flag,
// more than max_exact_groups is refused. Throws guard_error.
void check_exact_guard(const network_topology& topo, bool allow_long_running);

// Environment variable naming the table cache directory.
inline constexpr const char* table_cache_env = "COOPALOHA_TABLE_CACHE";
std::filesystem::path default_table_cache_dir();

// Sum of Pr(g) / r_target over all patterns of the table, by direct
// enumeration. Slow; used to cross-check the diagram.
retrieval_split enumerate_retrieval(const retrievability_table& table, const walk_graph& graph,
                                    std::span<const double> idle, std::span<const double> single);

}  // namespace coopaloha
