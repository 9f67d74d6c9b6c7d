#include "coopaloha/walk_graph.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <thread>
#include <unordered_map>

#include "coopaloha/error.hpp"
#include "coopaloha/hashing.hpp"

namespace coopaloha {

walk_graph::walk_graph(const network_topology& topo) : num_bs_(topo.num_bs()) {
  if (topo.num_groups() > 32) throw guard_error("walk graph supports at most 32 groups");
  for (const auto& g : topo.groups()) masks_.push_back(g.bs_set);
}

std::uint32_t walk_graph::peel(std::span<const node_state> states) const {
  std::array<int, max_base_stations> load{};
  std::uint32_t live = 0;  // groups in state `single` not yet peeled
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    const int mult = static_cast<int>(states[i]);
    if (mult == 0) continue;
    if (mult == 1) live |= 1U << i;
    for (int j = 0; j < num_bs_; ++j)
      if (masks_[i] & (bs_mask{1} << j)) load[static_cast<std::size_t>(j)] += mult;
  }
  std::uint32_t peeled = 0;
  bool progress = true;
  while (progress && live) {
    progress = false;
    for (std::size_t i = 0; i < masks_.size(); ++i) {
      if (!((live >> i) & 1U)) continue;
      bool free = false;
      for (int j = 0; j < num_bs_ && !free; ++j)
        free = (masks_[i] & (bs_mask{1} << j)) && load[static_cast<std::size_t>(j)] == 1;
      if (!free) continue;
      live &= ~(1U << i);
      peeled |= 1U << i;
      for (int j = 0; j < num_bs_; ++j)
        if (masks_[i] & (bs_mask{1} << j)) --load[static_cast<std::size_t>(j)];
      progress = true;
    }
  }
  return peeled;
}

bool walk_graph::initial_singleton(std::span<const node_state> states, std::size_t target) const {
  const bs_mask own = masks_[target];
  for (int j = 0; j < num_bs_; ++j) {
    const bs_mask bit = bs_mask{1} << j;
    if (!(own & bit)) continue;
    bool alone = true;
    for (std::size_t k = 0; k < masks_.size() && alone; ++k)
      if (k != target && (masks_[k] & bit) && states[k] != node_state::idle) alone = false;
    if (alone) return true;
  }
  return false;
}

pattern_space::pattern_space(std::size_t num_groups, std::size_t target)
    : num_groups_(num_groups), target_(target), size_(1) {
  if (target >= num_groups) throw config_error("target group out of range");
  if (num_groups > max_exact_groups + 8) throw guard_error("pattern space too large");
  for (std::size_t i = 1; i < num_groups; ++i) size_ *= 3;
}

std::vector<node_state> pattern_space::decode(std::uint64_t index) const {
  std::vector<node_state> states(num_groups_, node_state::idle);
  states[target_] = node_state::single;
  for (std::size_t d = 0; d + 1 < num_groups_; ++d) {
    states[group_of_digit(d)] = static_cast<node_state>(index % 3);
    index /= 3;
  }
  return states;
}

std::uint64_t pattern_space::encode(std::span<const node_state> states) const {
  std::uint64_t index = 0;
  for (std::size_t d = num_groups_ - 1; d-- > 0;) index = index * 3 + static_cast<std::uint64_t>(states[group_of_digit(d)]);
  return index;
}

std::uint64_t connectivity_fingerprint(const network_topology& topo) {
  std::string canon = "M=" + std::to_string(topo.num_bs()) + ";";
  for (const auto& g : topo.groups()) canon += std::to_string(g.bs_set) + ",";
  return fnv1a64(canon);
}

void check_exact_guard(const network_topology& topo, bool allow_long_running) {
  const auto n = topo.num_groups();
  if (n > max_exact_groups)
    throw guard_error("exact cooperative analysis refused: " + std::to_string(n) + " groups exceed the limit of " +
                      std::to_string(max_exact_groups) + " (use the bound mode)");
  if (n > 7 && !allow_long_running)
    throw guard_error("exact cooperative analysis with " + std::to_string(n) +
                      " groups is long-running; pass --allow-long-running");
}

namespace {

void fill_range(const walk_graph& graph, const pattern_space& space, std::uint64_t begin, std::uint64_t end,
                std::vector<std::uint64_t>& words) {
  auto states = space.decode(begin);
  const std::size_t digits = space.num_groups() - 1;
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    if (graph.retrievable(states, space.target())) words[idx >> 6] |= std::uint64_t{1} << (idx & 63);
    for (std::size_t d = 0; d < digits; ++d) {
      auto& s = states[space.group_of_digit(d)];
      if (s != node_state::collided) {
        s = static_cast<node_state>(static_cast<int>(s) + 1);
        break;
      }
      s = node_state::idle;
    }
  }
}

}  // namespace

retrievability_table retrievability_table::build(const network_topology& topo, std::size_t target, unsigned workers) {
  if (topo.num_groups() > max_exact_groups)
    throw guard_error("retrievability table needs at most " + std::to_string(max_exact_groups) + " groups");
  pattern_space space(topo.num_groups(), target);
  walk_graph graph(topo);
  std::vector<std::uint64_t> words((space.size() + 63) / 64, 0);

  workers = std::max(1U, workers);
  const std::uint64_t chunk_words = std::max<std::uint64_t>(1, (words.size() + workers - 1) / workers);
  if (workers == 1 || words.size() < 2 * workers) {
    fill_range(graph, space, 0, space.size(), words);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min<std::uint64_t>(space.size(), w * chunk_words * 64);
      const std::uint64_t end = std::min<std::uint64_t>(space.size(), (w + 1) * chunk_words * 64);
      if (begin >= end) break;
      pool.emplace_back([&, begin, end] { fill_range(graph, space, begin, end, words); });
    }
  }
  return retrievability_table(space, connectivity_fingerprint(topo), std::move(words));
}

std::uint64_t retrievability_table::count() const noexcept {
  std::uint64_t n = 0;
  for (auto w : words_) n += static_cast<std::uint64_t>(__builtin_popcountll(w));
  return n;
}

namespace {

constexpr char table_magic[4] = {'C', 'A', 'T', 'B'};
constexpr std::uint32_t table_version = 1;

template <class T>
void put(std::ostream& out, T v) {
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  unsigned char buf[sizeof(T)];
  in.read(reinterpret_cast<char*>(buf), sizeof(T));
  if (!in) throw config_error("truncated retrievability table");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return static_cast<T>(v);
}

}  // namespace

void retrievability_table::save(std::ostream& out) const {
  out.write(table_magic, 4);
  put<std::uint32_t>(out, table_version);
  put<std::uint64_t>(out, fingerprint_);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(space_.num_groups()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(space_.target()));
  put<std::uint64_t>(out, space_.size());
  put<std::uint64_t>(out, words_.size());
  for (auto w : words_) put<std::uint64_t>(out, w);
}

retrievability_table retrievability_table::load(std::istream& in, const network_topology& topo, std::size_t target) {
  char magic[4];
  in.read(magic, 4);
  if (!in || !std::equal(magic, magic + 4, table_magic)) throw config_error("not a retrievability table");
  if (get<std::uint32_t>(in) != table_version) throw config_error("unsupported retrievability table version");
  const auto fp = get<std::uint64_t>(in);
  if (fp != connectivity_fingerprint(topo)) throw config_error("retrievability table belongs to another topology");
  const auto groups = get<std::uint32_t>(in);
  const auto tgt = get<std::uint32_t>(in);
  if (groups != topo.num_groups() || tgt != target) throw config_error("retrievability table shape mismatch");
  pattern_space space(groups, tgt);
  if (get<std::uint64_t>(in) != space.size()) throw config_error("retrievability table pattern count mismatch");
  const auto nwords = get<std::uint64_t>(in);
  if (nwords != (space.size() + 63) / 64) throw config_error("retrievability table word count mismatch");
  std::vector<std::uint64_t> words(nwords);
  for (auto& w : words) w = get<std::uint64_t>(in);
  return retrievability_table(space, fp, std::move(words));
}

namespace {

struct triple_hash {
  std::size_t operator()(const std::array<std::uint32_t, 3>& t) const noexcept {
    std::uint64_t h = t[0];
    h = h * 0x9E3779B97F4A7C15ULL ^ t[1];
    h = h * 0x9E3779B97F4A7C15ULL ^ t[2];
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

}  // namespace

retrieval_diagram::retrieval_diagram(const retrievability_table& table, const network_topology& topo)
    : target_(table.target()) {
  const auto& space = table.space();
  const walk_graph graph(topo);
  const std::size_t digits = space.num_groups() - 1;

  // Leaves in index order: terminal id per pattern.
  std::vector<std::uint32_t> level(space.size());
  {
    auto states = space.decode(0);
    for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
      std::uint32_t t = 0;
      if (table.contains(idx)) t = graph.initial_singleton(states, target_) ? 1 : 2;
      level[idx] = t;
      for (std::size_t d = 0; d < digits; ++d) {
        auto& s = states[space.group_of_digit(d)];
        if (s != node_state::collided) {
          s = static_cast<node_state>(static_cast<int>(s) + 1);
          break;
        }
        s = node_state::idle;
      }
    }
  }

  // Fold the least significant digit first; consecutive triples differ only
  // in that digit. Sharing is per level since each level is one group.
  std::unordered_map<std::array<std::uint32_t, 3>, std::uint32_t, triple_hash> unique;
  for (std::size_t d = 0; d < digits; ++d) {
    const auto group = static_cast<std::uint32_t>(space.group_of_digit(d));
    std::vector<std::uint32_t> next(level.size() / 3);
    for (std::size_t k = 0; k < next.size(); ++k) {
      const std::array<std::uint32_t, 3> key{level[3 * k], level[3 * k + 1], level[3 * k + 2]};
      if (key[0] == key[1] && key[1] == key[2]) {
        next[k] = key[0];
        continue;
      }
      auto [it, inserted] = unique.try_emplace(key, 0);
      if (inserted) {
        nodes_.push_back({group, {key[0], key[1], key[2]}});
        it->second = static_cast<std::uint32_t>(nodes_.size() - 1 + terminal_count);
      }
      next[k] = it->second;
    }
    level = std::move(next);
    unique.clear();
  }
  root_ = level.empty() ? 0 : level[0];
}

retrieval_split retrieval_diagram::evaluate(std::span<const double> idle, std::span<const double> single) const {
  if (root_ < terminal_count) {
    if (root_ == 1) return {1.0, 0.0};
    if (root_ == 2) return {0.0, 1.0};
    return {};
  }
  thread_local std::vector<retrieval_split> values;
  values.resize(nodes_.size() + terminal_count);
  values[0] = {0.0, 0.0};
  values[1] = {1.0, 0.0};
  values[2] = {0.0, 1.0};
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    const auto& nd = nodes_[n];
    const double r = idle[nd.group];
    const double c = single[nd.group];
    const double d = 1.0 - r - c;
    const auto& a = values[nd.child[0]];
    const auto& b = values[nd.child[1]];
    const auto& e = values[nd.child[2]];
    values[n + terminal_count] = {r * a.singleton + c * b.singleton + d * e.singleton,
                                  r * a.collided + c * b.collided + d * e.collided};
  }
  return values[root_];
}

retrieval_split enumerate_retrieval(const retrievability_table& table, const walk_graph& graph,
                                    std::span<const double> idle, std::span<const double> single) {
  const auto& space = table.space();
  retrieval_split out;
  for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
    if (!table.contains(idx)) continue;
    const auto states = space.decode(idx);
    double pr = 1.0;
    for (std::size_t k = 0; k < states.size(); ++k) {
      if (k == space.target()) continue;
      switch (states[k]) {
        case node_state::idle: pr *= idle[k]; break;
        case node_state::single: pr *= single[k]; break;
        case node_state::collided: pr *= 1.0 - idle[k] - single[k]; break;
      }
    }
    (graph.initial_singleton(states, space.target()) ? out.singleton : out.collided) += pr;
  }
  return out;
}

std::filesystem::path default_table_cache_dir() {
  if (const char* env = std::getenv(table_cache_env); env && *env) return env;
  return {};
}

retrieval_model::retrieval_model(const network_topology& topo, const options& opts) {
  check_exact_guard(topo, opts.allow_long_running);
  for (std::size_t i = 0; i < topo.num_groups(); ++i) {
    std::optional<retrievability_table> table;
    std::filesystem::path file;
    if (!opts.cache_dir.empty()) {
      file = opts.cache_dir / ("walk-" + hex64(connectivity_fingerprint(topo)) + "-g" + std::to_string(i) + ".catb");
      if (std::ifstream in(file, std::ios::binary); in) {
        try {
          table = retrievability_table::load(in, topo, i);
        } catch (const error&) {
          table.reset();  // stale or corrupt; rebuild below
        }
      }
    }
    if (!table) {
      table = retrievability_table::build(topo, i, opts.workers);
      if (!file.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(opts.cache_dir, ec);
        const auto tmp = file.string() + ".tmp";
        {
          std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
          if (out) table->save(out);
        }
        std::filesystem::rename(tmp, file, ec);
      }
    }
    diagrams_.emplace_back(*table, topo);
    tables_.push_back(std::move(*table));
  }
}

}  // namespace coopaloha
