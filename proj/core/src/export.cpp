#include "coopaloha/export.hpp"

#include <charconv>
#include <json.hpp>

#include "coopaloha/hashing.hpp"
#include "coopaloha/rng.hpp"

#ifndef COOPALOHA_VERSION
#define COOPALOHA_VERSION "0.0.0"
#endif

namespace coopaloha {

using ojson = nlohmann::ordered_json;

std::string_view library_version() noexcept { return COOPALOHA_VERSION; }

run_metadata make_metadata(std::string command, std::string_view config_text, std::uint64_t seed) {
  return {std::move(command), hex64(fnv1a64(config_text)), seed};
}

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

namespace {

ojson meta_json(const run_metadata& meta) {
  return ojson{{"command", meta.command},
               {"config_hash", meta.config_hash},
               {"version", library_version()},
               {"seed", meta.seed},
               {"rng", rng_identifier}};
}

void append_group_columns(std::string& out, std::string_view prefix, std::size_t n) {
  for (std::size_t i = 1; i <= n; ++i) {
    out += ',';
    out += prefix;
    out += std::to_string(i);
  }
}

}  // namespace

std::string metadata_comment(const run_metadata& meta) {
  std::string out;
  out += "# command=" + meta.command + "\n";
  out += "# config_hash=" + meta.config_hash + "\n";
  out += "# version=" + std::string(library_version()) + "\n";
  out += "# seed=" + std::to_string(meta.seed) + "\n";
  out += "# rng=" + std::string(rng_identifier) + "\n";
  return out;
}

std::string curve_csv(const plr_curve& curve, const run_metadata& meta) {
  const std::size_t groups = curve.points.empty() ? 0 : curve.points.front().plr.size();
  std::string out = metadata_comment(meta);
  out += "T,plr_avg";
  append_group_columns(out, "plr_g", groups);
  out += ",throughput\n";
  for (const auto& p : curve.points) {
    out += std::to_string(p.slots) + ',' + format_double(p.plr_avg);
    for (double v : p.plr) out += ',' + format_double(v);
    out += ',' + format_double(p.throughput) + '\n';
  }
  return out;
}

std::string peak_json(const plr_curve& curve, const peak_result& peak, analysis_mode mode, const run_metadata& meta) {
  ojson j;
  j["metadata"] = meta_json(meta);
  j["mode"] = to_string(mode);
  j["peak"] = {{"T", peak.slots},
               {"throughput", peak.throughput},
               {"plr_avg", peak.plr_avg},
               {"plr", peak.plr},
               {"converged", peak.converged},
               {"evaluations", peak.evaluations}};
  if (!curve.points.empty()) {
    const auto& g = curve.points[curve.peak];
    j["grid_peak"] = {{"T", g.slots}, {"throughput", g.throughput}, {"plr_avg", g.plr_avg}};
  }
  auto points = ojson::array();
  for (const auto& p : curve.points)
    points.push_back({{"T", p.slots}, {"plr_avg", p.plr_avg}, {"plr", p.plr}, {"throughput", p.throughput}});
  j["curve"] = std::move(points);
  return j.dump(2) + "\n";
}

std::string trace_csv(const evolution_result& res, const run_metadata& meta) {
  const std::size_t groups = res.plr.size();
  std::string out = metadata_comment(meta);
  out += "iteration";
  append_group_columns(out, "r0_g", groups);
  append_group_columns(out, "r1_g", groups);
  out += '\n';
  for (const auto& t : res.trace) {
    out += std::to_string(t.iteration);
    for (double v : t.singleton) out += ',' + format_double(v);
    for (double v : t.collided) out += ',' + format_double(v);
    out += '\n';
  }
  return out;
}

std::string simulation_csv(const simulation_summary& summary, const network_topology& topo, const run_metadata& meta) {
  std::string out = metadata_comment(meta);
  out += "trial,seed,T,n_ret,throughput";
  append_group_columns(out, "plr_g", topo.num_groups());
  out += '\n';
  for (const auto& r : summary.records) {
    out += std::to_string(r.trial) + ',' + std::to_string(r.seed) + ',' + std::to_string(r.frame.slots) + ',' +
           std::to_string(r.frame.retrieved) + ',' + format_double(r.frame.throughput);
    for (double v : r.frame.group_plr(topo)) out += ',' + format_double(v);
    out += '\n';
  }
  return out;
}

std::string simulation_json(const simulation_summary& summary, const network_topology& topo, const run_metadata& meta,
                            bool include_records) {
  auto ms = [](const mean_stderr& m) { return ojson{{"mean", m.mean}, {"stderr", m.std_error}}; };
  ojson j;
  j["metadata"] = meta_json(meta);
  j["trials"] = summary.trials;
  j["throughput"] = ms(summary.throughput);
  j["slots"] = ms(summary.slots);
  j["plr"] = ms(summary.plr);
  j["group_plr"] = summary.group_plr;
  j["slot_cap_hits"] = summary.slot_cap_hits;
  if (include_records) {
    auto rows = ojson::array();
    for (const auto& r : summary.records)
      rows.push_back({{"trial", r.trial},
                      {"seed", r.seed},
                      {"T", r.frame.slots},
                      {"n_ret", r.frame.retrieved},
                      {"throughput", r.frame.throughput},
                      {"plr", r.frame.group_plr(topo)}});
    j["records"] = std::move(rows);
  }
  return j.dump(2) + "\n";
}

std::string optimization_json(const optimization_result& res, const run_metadata& meta) {
  ojson j;
  j["metadata"] = meta_json(meta);
  j["feasible"] = res.best.feasible;
  j["G"] = res.g;
  j["class_G"] = res.class_values;
  j["T"] = res.best.slots;
  j["throughput"] = res.best.throughput;
  j["plr_avg"] = res.best.plr_avg;
  j["score"] = res.best.score;
  j["history"] = res.history;
  j["evaluations"] = res.evaluations;
  return j.dump(2) + "\n";
}

std::string optimization_csv_header(std::size_t num_groups) {
  std::string out = "label,feasible";
  append_group_columns(out, "G", num_groups);
  out += ",T,throughput,plr_avg\n";
  return out;
}

std::string optimization_csv_row(std::string_view label, const optimization_result& res) {
  std::string out(label);
  out += res.best.feasible ? ",1" : ",0";
  for (double v : res.g) out += ',' + format_double(v);
  out += ',' + std::to_string(res.best.slots) + ',' + format_double(res.best.throughput) + ',' +
         format_double(res.best.plr_avg) + '\n';
  return out;
}

}  // namespace coopaloha
