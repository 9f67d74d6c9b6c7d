#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "coopaloha/evolution.hpp"
#include "coopaloha/monte_carlo.hpp"
#include "coopaloha/optimizer.hpp"
#include "coopaloha/peak_search.hpp"
#include "coopaloha/topology.hpp"

namespace coopaloha {

std::string_view library_version() noexcept;

// Stamped on every exported file.
struct run_metadata {
  std::string command;
  std::string config_hash;  // hex64(fnv1a64(canonical config text))
  std::uint64_t seed = 0;
};

run_metadata make_metadata(std::string command, std::string_view config_text, std::uint64_t seed);

// CSV files open with "# key=value" comment lines carrying the metadata.
std::string metadata_comment(const run_metadata& meta);

// T,plr_avg,plr_g1..plr_gI,throughput
std::string curve_csv(const plr_curve& curve, const run_metadata& meta);
// Peak summary; the curve points are included as well.
std::string peak_json(const plr_curve& curve, const peak_result& peak, analysis_mode mode, const run_metadata& meta);

// iteration,r0_g1..r0_gI,r1_g1..r1_gI
std::string trace_csv(const evolution_result& res, const run_metadata& meta);

// trial,seed,T,n_ret,throughput,plr_g1..plr_gI
std::string simulation_csv(const simulation_summary& summary, const network_topology& topo, const run_metadata& meta);
std::string simulation_json(const simulation_summary& summary, const network_topology& topo, const run_metadata& meta,
                            bool include_records = false);

std::string optimization_json(const optimization_result& res, const run_metadata& meta);
std::string optimization_csv_header(std::size_t num_groups);
std::string optimization_csv_row(std::string_view label, const optimization_result& res);

// Shortest round-trip decimal for a double.
std::string format_double(double v);

}  // namespace coopaloha
