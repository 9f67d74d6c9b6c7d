#include "coopaloha/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <json.hpp>

#include "coopaloha/error.hpp"

namespace coopaloha {

const char* to_string(termination t) {
  switch (t) {
    case termination::threshold: return "threshold";
    case termination::slot_cap: return "slot_cap";
    case termination::fixed_length: return "fixed_length";
  }
  return "?";
}

std::vector<double> frame_result::group_plr(const network_topology& topo) const {
  std::vector<double> out(topo.num_groups(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto n = topo.group(i).num_users;
    if (n > 0) out[i] = 1.0 - static_cast<double>(retrieved_per_group[i]) / static_cast<double>(n);
  }
  return out;
}

double frame_result::plr(const network_topology& topo) const {
  const auto n = topo.total_users();
  return n == 0 ? 0.0 : 1.0 - static_cast<double>(retrieved) / static_cast<double>(n);
}

sic_decoder::sic_decoder(const network_topology& topo) : num_bs_(topo.num_bs()) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < topo.num_groups(); ++i) {
    group_sets_.push_back(topo.group(i).bs_set);
    const auto st = topo.stations_of(i);
    group_stations_.emplace_back(st.begin(), st.end());
    first_user_.push_back(static_cast<std::uint32_t>(total));
    total += topo.group(i).num_users;
  }
  if (total >= (std::uint64_t{1} << 32)) throw config_error("too many users for the simulator");
  group_of_.resize(total);
  for (std::size_t i = 0; i < topo.num_groups(); ++i)
    std::fill_n(group_of_.begin() + first_user_[i], topo.group(i).num_users, static_cast<std::uint32_t>(i));
  replicas_.resize(total);
  retrieved_.assign(total, 0);
  retrieved_per_group_.assign(topo.num_groups(), 0);
}

std::uint64_t sic_decoder::open_slot() {
  buckets_.resize(buckets_.size() + static_cast<std::size_t>(num_bs_));
  return slots_++;
}

void sic_decoder::transmit(std::uint32_t user, std::uint64_t slot) {
  if (retrieved_[user]) return;
  replicas_[user].push_back(slot);
  for (int bs : group_stations_[group_of_[user]]) {
    const auto b = static_cast<std::size_t>(slot) * static_cast<std::size_t>(num_bs_) + static_cast<std::size_t>(bs);
    auto& bk = buckets_[b];
    ++bk.count;
    bk.ids ^= user;
    // Only singletons are queued; stale entries are filtered in decode().
    if (bk.count == 1) ready_.push_back(b);
  }
}

void sic_decoder::retrieve(std::uint32_t user) {
  retrieved_[user] = 1;
  ++retrieved_total_;
  ++retrieved_per_group_[group_of_[user]];
  for (auto slot : replicas_[user]) {
    for (int bs : group_stations_[group_of_[user]]) {
      const auto b = static_cast<std::size_t>(slot) * static_cast<std::size_t>(num_bs_) + static_cast<std::size_t>(bs);
      auto& bk = buckets_[b];
      --bk.count;
      bk.ids ^= user;
      if (bk.count == 1) ready_.push_back(b);
    }
  }
}

void sic_decoder::decode() {
  while (!ready_.empty()) {
    const auto b = ready_.back();
    ready_.pop_back();
    if (buckets_[b].count != 1) continue;
    retrieve(buckets_[b].ids);
  }
}

std::uint32_t sic_decoder::bucket_load(std::uint64_t slot, int bs) const {
  return buckets_.at(static_cast<std::size_t>(slot) * static_cast<std::size_t>(num_bs_) + static_cast<std::size_t>(bs)).count;
}

std::vector<std::uint32_t> sic_decoder::bucket_members(std::uint64_t slot, int bs) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t u = 0; u < group_of_.size(); ++u) {
    if (retrieved_[u] || !(group_sets_[group_of_[u]] & (bs_mask{1} << bs))) continue;
    if (std::find(replicas_[u].begin(), replicas_[u].end(), slot) != replicas_[u].end()) out.push_back(u);
  }
  return out;
}

std::uint64_t default_slot_cap(const network_topology& topo) {
  return std::max<std::uint64_t>(1, 10 * topo.total_users() / static_cast<std::uint64_t>(topo.num_bs()));
}

namespace {

// k distinct values from [0, n) (Floyd's algorithm).
void sample_distinct(frame_rng& rng, std::uint64_t n, std::uint64_t k, std::vector<std::uint64_t>& out) {
  out.clear();
  for (std::uint64_t j = n - k; j < n; ++j) {
    const std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
    if (std::find(out.begin(), out.end(), t) == out.end())
      out.push_back(t);
    else
      out.push_back(j);
  }
}

class frameless_source {
 public:
  frameless_source(const network_topology& topo, std::span<const double> g, std::uint64_t seed)
      : topo_(topo), p_(transmission_probabilities(topo, g)), rng_(seed) {}

  // Draws every group's transmitters for one slot.
  void emit(sic_decoder& dec, std::uint64_t slot) {
    for (std::size_t i = 0; i < topo_.num_groups(); ++i) {
      const auto n = topo_.group(i).num_users;
      if (n == 0 || p_[i] == 0.0) continue;
      const auto k = std::binomial_distribution<std::uint64_t>(n, p_[i])(rng_);
      if (k == 0) continue;
      sample_distinct(rng_, n, k, picked_);
      const auto base = dec.first_user(i);
      for (auto u : picked_) dec.transmit(base + static_cast<std::uint32_t>(u), slot);
    }
  }

 private:
  const network_topology& topo_;
  std::vector<double> p_;
  frame_rng rng_;
  std::vector<std::uint64_t> picked_;
};

frame_result finish(const sic_decoder& dec, termination how) {
  frame_result r;
  r.slots = dec.slots();
  r.retrieved_per_group = dec.retrieved_per_group();
  r.retrieved = dec.retrieved_count();
  r.throughput = r.slots == 0 ? 0.0 : static_cast<double>(r.retrieved) / static_cast<double>(r.slots);
  r.terminated_by = how;
  return r;
}

}  // namespace

frame_result run_frame(const network_topology& topo, std::span<const double> g, double alpha, std::uint64_t seed,
                       std::uint64_t slot_cap) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw config_error("alpha must be in (0, 1]");
  if (slot_cap == 0) slot_cap = default_slot_cap(topo);
  const auto target = static_cast<std::uint64_t>(std::floor(alpha * static_cast<double>(topo.total_users())));
  sic_decoder dec(topo);
  frameless_source src(topo, g, seed);
  while (dec.slots() < slot_cap) {
    const auto t = dec.open_slot();
    src.emit(dec, t);
    dec.decode();
    if (dec.retrieved_count() >= target) return finish(dec, termination::threshold);
  }
  return finish(dec, termination::slot_cap);
}

frame_result run_fixed_frame(const network_topology& topo, std::span<const double> g, std::uint64_t slots,
                             std::uint64_t seed) {
  if (slots == 0) throw config_error("fixed frame needs at least one slot");
  sic_decoder dec(topo);
  frameless_source src(topo, g, seed);
  for (std::uint64_t s = 0; s < slots; ++s) {
    const auto t = dec.open_slot();
    src.emit(dec, t);
    dec.decode();
  }
  return finish(dec, termination::fixed_length);
}

replica_distribution parse_replica_distribution(std::string_view text) {
  replica_distribution out;
  auto put = [&](long long s, double m) {
    if (s < 1) throw config_error("replica degrees start at 1");
    if (!(m >= 0.0)) throw config_error("replica distribution mass must be non-negative");
    if (static_cast<std::size_t>(s) >= out.mass.size()) out.mass.resize(static_cast<std::size_t>(s) + 1, 0.0);
    out.mass[static_cast<std::size_t>(s)] += m;
  };
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw config_error(std::string("replica distribution: ") + e.what());
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (!it->is_number()) throw config_error("replica distribution masses must be numbers");
      put(std::stoll(it.key()), it->get<double>());
    }
  } else {
    std::string s(text);
    std::size_t pos = 0;
    while (pos < s.size()) {
      auto comma = s.find(',', pos);
      if (comma == std::string::npos) comma = s.size();
      const auto item = s.substr(pos, comma - pos);
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw config_error("replica distribution entries look like 2:1.0");
      try {
        put(std::stoll(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
      } catch (const std::logic_error&) {
        throw config_error("malformed replica distribution entry '" + item + "'");
      }
      pos = comma + 1;
    }
  }
  const double total = std::accumulate(out.mass.begin(), out.mass.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) throw config_error("replica distribution must sum to 1");
  return out;
}

frame_result run_spatio_temporal(const network_topology& topo, const replica_distribution& lambda,
                                 std::uint64_t slots, std::uint64_t seed) {
  if (slots == 0) throw config_error("spatio-temporal frame needs at least one slot");
  if (lambda.max_degree() == 0) throw config_error("empty replica distribution");
  std::discrete_distribution<std::size_t> degree(lambda.mass.begin(), lambda.mass.end());
  if (lambda.max_degree() > slots) {
    for (std::size_t s = slots + 1; s <= lambda.max_degree(); ++s)
      if (lambda.mass[s] > 0.0) throw config_error("replica degree exceeds the frame length");
  }
  sic_decoder dec(topo);
  for (std::uint64_t s = 0; s < slots; ++s) dec.open_slot();
  frame_rng rng(seed);
  std::vector<std::uint64_t> picked;
  for (std::uint32_t u = 0; u < dec.num_users(); ++u) {
    const auto s = degree(rng);
    sample_distinct(rng, slots, s, picked);
    for (auto t : picked) dec.transmit(u, t);
  }
  dec.decode();
  return finish(dec, termination::fixed_length);
}

double normalized_load(const network_topology& topo, std::uint64_t slots) {
  return static_cast<double>(topo.total_users()) / (static_cast<double>(topo.num_bs()) * static_cast<double>(slots));
}

std::uint64_t slots_for_load(const network_topology& topo, double load) {
  if (!(load > 0.0)) throw config_error("normalized load must be positive");
  const double t = static_cast<double>(topo.total_users()) / (static_cast<double>(topo.num_bs()) * load);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(t)));
}

double silent_user_floor(const network_topology& topo, std::span<const double> g, std::uint64_t slots) {
  const auto p = transmission_probabilities(topo, g);
  const double n = static_cast<double>(topo.total_users());
  if (n == 0.0) return 0.0;
  double floor = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    floor += static_cast<double>(topo.group(i).num_users) / n * std::pow(1.0 - p[i], static_cast<double>(slots));
  return floor;
}

}  // namespace coopaloha
