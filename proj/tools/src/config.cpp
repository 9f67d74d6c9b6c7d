#include "config.hpp"
#include "networks.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include <coopaloha/error.hpp>

namespace coopaloha::cli {

namespace {

using nlohmann::json;

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw config_error(std::string("field ") + key + " has the wrong type");
  }
}

frame_kind parse_kind(const std::string& s) {
  if (s == "frameless") return frame_kind::frameless;
  if (s == "frameless_fixed") return frame_kind::frameless_fixed;
  if (s == "spatio_temporal") return frame_kind::spatio_temporal;
  throw config_error("unknown frame kind: " + s);
}

replica_distribution parse_lambda(const json& j) {
  return parse_replica_distribution(j.is_string() ? j.get<std::string>() : j.dump());
}

std::vector<double> parse_degrees(const json& j, const json& topo_json, const network_topology& topo) {
  if (j.is_object()) {
    if (!j.contains("by_coverage") || !j["by_coverage"].is_array())
      throw config_error("degrees object needs a by_coverage array");
    return degrees_by_coverage(topo, j["by_coverage"].get<std::vector<double>>());
  }
  if (!j.is_array()) throw config_error("degrees must be an array or {\"by_coverage\": [...]}");
  const auto& listed = topo_json["groups"];
  if (j.size() != listed.size()) throw config_error("one degree per listed group expected");
  std::vector<double> g(topo.num_groups(), 0.0);
  for (std::size_t k = 0; k < listed.size(); ++k) {
    bs_mask set = 0;
    for (const auto& b : listed[k]["bs_set"]) set |= bs_mask{1} << (b.get<int>() - 1);
    if (!j[k].is_number()) throw config_error("degrees must be numbers");
    g[topo.find_group(set)] = j[k].get<double>();
  }
  return g;
}

}  // namespace

experiment_config parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config parse failure: ") + e.what());
  }
  if (!doc.is_object()) throw config_error("config must be a JSON object");

  static const char* known[] = {"label", "topology", "degrees", "mode", "alpha", "slots", "grid_points", "seed",
                                "simulate", "compare", "bounds", "optimize"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known))
      throw config_error("unknown config field: " + key);
  }

  experiment_config cfg;
  cfg.canonical_text = doc.dump();
  cfg.label = get_or<std::string>(doc, "label", "");
  if (doc.contains("topology")) {
    cfg.topology = load_topology(doc["topology"].dump());
    if (doc.contains("degrees")) cfg.g = parse_degrees(doc["degrees"], doc["topology"], *cfg.topology);
  } else if (doc.contains("degrees")) {
    throw config_error("degrees given without a topology");
  }
  cfg.mode = parse_analysis_mode(get_or<std::string>(doc, "mode", "coop"));
  cfg.alpha = get_or<double>(doc, "alpha", 0.8);
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) throw config_error("alpha must be in (0, 1]");
  if (doc.contains("slots")) {
    const auto& s = doc["slots"];
    if (s.is_array()) {
      cfg.slots = s.get<std::vector<std::uint64_t>>();
    } else if (s.is_object()) {
      const auto lo = get_or<std::uint64_t>(s, "min", 1);
      const auto hi = get_or<std::uint64_t>(s, "max", lo);
      const auto step = get_or<std::uint64_t>(s, "step", 1);
      if (lo < 1 || hi < lo || step < 1) throw config_error("slots range is invalid");
      for (auto t = lo; t <= hi; t += step) cfg.slots.push_back(t);
    } else {
      throw config_error("slots must be an array or {min, max, step}");
    }
    if (!std::is_sorted(cfg.slots.begin(), cfg.slots.end()) ||
        std::adjacent_find(cfg.slots.begin(), cfg.slots.end()) != cfg.slots.end())
      throw config_error("slots must be strictly ascending");
  }
  cfg.grid_points = get_or<std::size_t>(doc, "grid_points", cfg.grid_points);
  if (doc.contains("seed")) cfg.seed = get_or<std::uint64_t>(doc, "seed", 0);

  if (doc.contains("simulate")) {
    const auto& s = doc["simulate"];
    cfg.simulate.trials = get_or<std::size_t>(s, "trials", cfg.simulate.trials);
    cfg.simulate.kind = parse_kind(get_or<std::string>(s, "kind", "frameless"));
    cfg.simulate.slot_cap = get_or<std::uint64_t>(s, "slot_cap", 0);
    cfg.simulate.slots = get_or<std::uint64_t>(s, "slots", 0);
    if (s.contains("load")) cfg.simulate.load = get_or<double>(s, "load", 0.0);
    if (s.contains("lambda")) cfg.simulate.lambda = parse_lambda(s["lambda"]);
  }
  if (doc.contains("compare")) {
    const auto& c = doc["compare"];
    cfg.compare.loads = get_or<std::vector<double>>(c, "loads", cfg.compare.loads);
    cfg.compare.trials = get_or<std::size_t>(c, "trials", cfg.compare.trials);
    cfg.compare.baseline = parse_kind(get_or<std::string>(c, "baseline", "spatio_temporal"));
    if (c.contains("lambda")) cfg.compare.lambda = parse_lambda(c["lambda"]);
  }
  if (cfg.compare.lambda.mass.empty()) cfg.compare.lambda = parse_replica_distribution("2:1");
  if (doc.contains("bounds")) {
    const auto& b = doc["bounds"];
    cfg.bounds.bs_counts = get_or<std::vector<int>>(b, "bs_counts", cfg.bounds.bs_counts);
    cfg.bounds.users_per_group = get_or<std::uint64_t>(b, "users_per_group", cfg.bounds.users_per_group);
    cfg.bounds.single_bs_degree = get_or<double>(b, "single_bs_degree", cfg.bounds.single_bs_degree);
  }
  if (doc.contains("optimize")) {
    const auto& o = doc["optimize"];
    cfg.de.population = get_or<std::size_t>(o, "population", cfg.de.population);
    cfg.de.mutant_factor = get_or<double>(o, "mutant_factor", cfg.de.mutant_factor);
    cfg.de.generations = get_or<std::size_t>(o, "generations", cfg.de.generations);
    cfg.de.crossover_rate = get_or<double>(o, "crossover_rate", cfg.de.crossover_rate);
    cfg.lower = get_or<double>(o, "lower", cfg.lower);
    cfg.upper = get_or<double>(o, "upper", cfg.upper);
  }
  return cfg;
}

experiment_config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace coopaloha::cli
