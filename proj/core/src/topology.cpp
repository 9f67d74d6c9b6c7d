#include "coopaloha/topology.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "coopaloha/error.hpp"

namespace coopaloha {

double checked_probability(double value, const char* what) {
  constexpr double slack = 1e-6;
  if (!(value >= -slack && value <= 1.0 + slack)) {
    std::ostringstream os;
    os << what << " = " << value << " is not a probability";
    throw numerical_error(os.str());
  }
  return std::clamp(value, 0.0, 1.0);
}

namespace {

void validate_ties(const tie_classes& ties, std::size_t num_groups) {
  if (ties.empty()) return;
  std::vector<int> seen(num_groups, 0);
  for (const auto& cls : ties) {
    if (cls.empty()) throw config_error("tie class is empty");
    for (auto i : cls) {
      if (i >= num_groups) throw config_error("tie class references unknown group " + std::to_string(i + 1));
      if (seen[i]++) throw config_error("group " + std::to_string(i + 1) + " appears in more than one tie class");
    }
  }
  if (std::count(seen.begin(), seen.end(), 0) != 0) throw config_error("tie classes must cover every group");
}

}  // namespace

network_topology::network_topology(int num_bs, std::vector<group_spec> groups, tie_classes ties)
    : num_bs_(num_bs), groups_(std::move(groups)), ties_(std::move(ties)) {
  if (num_bs_ < 1 || num_bs_ > max_base_stations)
    throw config_error("num_bs must be in [1, " + std::to_string(max_base_stations) + "]");
  const bs_mask all = (bs_mask{1} << num_bs_) - 1;
  if (groups_.empty()) throw config_error("topology has no groups");
  if (groups_.size() > all) throw config_error("more than 2^M - 1 groups");

  std::vector<std::size_t> order(groups_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return groups_[a].bs_set < groups_[b].bs_set; });
  std::vector<group_spec> sorted;
  sorted.reserve(groups_.size());
  for (auto i : order) sorted.push_back(groups_[i]);

  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto set = sorted[i].bs_set;
    if (set == 0) throw config_error("group has an empty bs_set");
    if ((set & ~all) != 0) throw config_error("bs_set " + describe_bs_set(set) + " names a BS beyond num_bs");
    if (i > 0 && sorted[i - 1].bs_set == set) throw config_error("duplicate bs_set " + describe_bs_set(set));
  }

  // Tie classes refer to the caller's indices; remap to canonical order.
  if (!ties_.empty()) {
    validate_ties(ties_, groups_.size());
    std::vector<std::size_t> new_index(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) new_index[order[pos]] = pos;
    for (auto& cls : ties_) {
      for (auto& i : cls) i = new_index[i];
      std::sort(cls.begin(), cls.end());
    }
    std::sort(ties_.begin(), ties_.end());
  }
  groups_ = std::move(sorted);

  groups_at_.assign(static_cast<std::size_t>(num_bs_), {});
  stations_of_.assign(groups_.size(), {});
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    total_users_ += groups_[i].num_users;
    for (int j = 0; j < num_bs_; ++j) {
      if (groups_[i].bs_set & (bs_mask{1} << j)) {
        groups_at_[static_cast<std::size_t>(j)].push_back(i);
        stations_of_[i].push_back(j);
      }
    }
  }
}

std::size_t network_topology::find_group(bs_mask set) const noexcept {
  auto it = std::lower_bound(groups_.begin(), groups_.end(), set,
                             [](const group_spec& g, bs_mask s) { return g.bs_set < s; });
  if (it != groups_.end() && it->bs_set == set) return static_cast<std::size_t>(it - groups_.begin());
  return groups_.size();
}

network_topology full_topology(int num_bs, std::span<const std::uint64_t> counts) {
  if (num_bs < 1 || num_bs > max_base_stations) throw config_error("num_bs out of range");
  const std::size_t expected = (std::size_t{1} << num_bs) - 1;
  if (counts.size() != expected)
    throw config_error("full topology with M=" + std::to_string(num_bs) + " needs " + std::to_string(expected) +
                       " counts, got " + std::to_string(counts.size()));
  std::vector<group_spec> groups;
  groups.reserve(expected);
  for (std::size_t m = 1; m <= expected; ++m) groups.push_back({static_cast<bs_mask>(m), counts[m - 1]});
  return network_topology(num_bs, std::move(groups));
}

tie_classes ties_by_coverage(const network_topology& topo) {
  tie_classes out;
  for (int c = 1; c <= topo.num_bs(); ++c) {
    std::vector<std::size_t> cls;
    for (std::size_t i = 0; i < topo.num_groups(); ++i)
      if (topo.coverage(i) == static_cast<std::size_t>(c)) cls.push_back(i);
    if (!cls.empty()) out.push_back(std::move(cls));
  }
  return out;
}

tie_classes singleton_ties(std::size_t num_groups) {
  tie_classes out(num_groups);
  for (std::size_t i = 0; i < num_groups; ++i) out[i] = {i};
  return out;
}

tie_classes effective_ties(const network_topology& topo) {
  return topo.ties().empty() ? singleton_ties(topo.num_groups()) : topo.ties();
}

std::string describe_bs_set(bs_mask set) {
  std::string s = "{";
  bool first = true;
  for (int j = 0; j < 32; ++j) {
    if (set & (bs_mask{1} << j)) {
      if (!first) s += ",";
      s += std::to_string(j + 1);
      first = false;
    }
  }
  return s + "}";
}

network_topology load_topology(std::string_view config_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(config_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error(std::string("config parse failure: ") + e.what());
  }
  if (!doc.is_object()) throw config_error("config must be a JSON object");
  if (!doc.contains("num_bs") || !doc["num_bs"].is_number_integer()) throw config_error("missing integer field num_bs");
  if (!doc.contains("groups") || !doc["groups"].is_array()) throw config_error("missing array field groups");

  const int num_bs = doc["num_bs"].get<int>();
  if (num_bs < 1 || num_bs > max_base_stations) throw config_error("num_bs out of range");

  std::vector<group_spec> groups;
  for (const auto& g : doc["groups"]) {
    if (!g.is_object() || !g.contains("bs_set") || !g["bs_set"].is_array())
      throw config_error("group entry needs a bs_set array");
    if (!g.contains("num_users") || !g["num_users"].is_number_integer() || g["num_users"].get<long long>() < 0)
      throw config_error("group entry needs a non-negative integer num_users");
    bs_mask set = 0;
    for (const auto& b : g["bs_set"]) {
      if (!b.is_number_integer()) throw config_error("bs_set entries must be integers");
      const int j = b.get<int>();
      if (j < 1 || j > num_bs) throw config_error("bs_set entry " + std::to_string(j) + " outside 1..num_bs");
      const bs_mask bit = bs_mask{1} << (j - 1);
      if (set & bit) throw config_error("bs_set lists BS " + std::to_string(j) + " twice");
      set |= bit;
    }
    groups.push_back({set, g["num_users"].get<std::uint64_t>()});
  }

  tie_classes ties;
  if (doc.contains("tie_classes")) {
    const auto& t = doc["tie_classes"];
    if (t.is_string()) {
      if (t.get<std::string>() != "by_coverage") throw config_error("unknown tie_classes keyword");
      network_topology tmp(num_bs, groups);
      return network_topology(num_bs, std::vector<group_spec>(tmp.groups().begin(), tmp.groups().end()),
                              ties_by_coverage(tmp));
    }
    if (!t.is_array()) throw config_error("tie_classes must be an array or \"by_coverage\"");
    for (const auto& cls : t) {
      if (!cls.is_array()) throw config_error("tie class must be an array of group indices");
      std::vector<std::size_t> members;
      for (const auto& i : cls) {
        if (!i.is_number_integer() || i.get<long long>() < 1) throw config_error("tie class indices are 1-based");
        members.push_back(i.get<std::size_t>() - 1);
      }
      ties.push_back(std::move(members));
    }
  }
  return network_topology(num_bs, std::move(groups), std::move(ties));
}

std::string to_config_text(const network_topology& topo) {
  nlohmann::ordered_json doc;
  doc["num_bs"] = topo.num_bs();
  auto groups = nlohmann::ordered_json::array();
  for (const auto& g : topo.groups()) {
    nlohmann::ordered_json entry;
    auto set = nlohmann::ordered_json::array();
    for (int j = 0; j < topo.num_bs(); ++j)
      if (g.bs_set & (bs_mask{1} << j)) set.push_back(j + 1);
    entry["bs_set"] = std::move(set);
    entry["num_users"] = g.num_users;
    groups.push_back(std::move(entry));
  }
  doc["groups"] = std::move(groups);
  if (!topo.ties().empty()) {
    auto ties = nlohmann::ordered_json::array();
    for (const auto& cls : topo.ties()) {
      auto c = nlohmann::ordered_json::array();
      for (auto i : cls) c.push_back(i + 1);
      ties.push_back(std::move(c));
    }
    doc["tie_classes"] = std::move(ties);
  }
  return doc.dump(2) + "\n";
}

std::vector<double> transmission_probabilities(const network_topology& topo, std::span<const double> g) {
  if (g.size() != topo.num_groups())
    throw config_error("expected " + std::to_string(topo.num_groups()) + " target degrees, got " +
                       std::to_string(g.size()));
  std::vector<double> p(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto n = topo.group(i).num_users;
    if (!(g[i] >= 0.0) || !std::isfinite(g[i])) throw config_error("target degree must be non-negative");
    if (n == 0) continue;
    if (g[i] > static_cast<double>(n))
      throw config_error("target degree " + std::to_string(g[i]) + " exceeds group size " + std::to_string(n) +
                         " (p > 1)");
    p[i] = g[i] / static_cast<double>(n);
  }
  return p;
}

std::vector<double> expand_ties(const tie_classes& ties, std::size_t num_groups, std::span<const double> per_class) {
  if (per_class.size() != ties.size()) throw config_error("one value per tie class expected");
  std::vector<double> out(num_groups, 0.0);
  for (std::size_t c = 0; c < ties.size(); ++c)
    for (auto i : ties[c]) out.at(i) = per_class[c];
  return out;
}

}  // namespace coopaloha
