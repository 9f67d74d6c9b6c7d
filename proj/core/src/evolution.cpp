#include "coopaloha/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coopaloha/bounds.hpp"
#include "coopaloha/degrees.hpp"
#include "coopaloha/error.hpp"

namespace coopaloha {

const char* to_string(analysis_mode mode) {
  switch (mode) {
    case analysis_mode::coop: return "coop";
    case analysis_mode::noncoop: return "noncoop";
    case analysis_mode::bound: return "bound";
  }
  return "?";
}

analysis_mode parse_analysis_mode(std::string_view text) {
  if (text == "coop") return analysis_mode::coop;
  if (text == "noncoop") return analysis_mode::noncoop;
  if (text == "bound") return analysis_mode::bound;
  throw config_error("unknown analysis mode '" + std::string(text) + "' (coop|noncoop|bound)");
}

slot_terms group_slot_terms(std::uint64_t group_size, double p, double x) {
  if (group_size == 0) return {1.0, 0.0, 1.0};
  const double n = static_cast<double>(group_size);
  const double px = p * x;
  if (px >= 1.0) {
    // Every member transmits and none is retrieved yet.
    return {0.0, group_size == 1 ? 1.0 : 0.0, group_size == 1 ? 1.0 : 0.0};
  }
  const double l = std::log1p(-px);
  const double sole = std::exp((n - 1.0) * l);
  return {sole * (1.0 - px), n * px * sole, sole};
}

double throughput(const network_topology& topo, std::span<const double> plr, std::uint64_t slots) {
  // Neumaier summation keeps the group order from mattering at 1e-12.
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < plr.size(); ++i) {
    const double term = static_cast<double>(topo.group(i).num_users) * (1.0 - plr[i]);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return (sum + comp) / static_cast<double>(slots);
}

double average_plr(const network_topology& topo, std::span<const double> plr) {
  const double total = static_cast<double>(topo.total_users());
  if (total == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < plr.size(); ++i) sum += static_cast<double>(topo.group(i).num_users) / total * plr[i];
  return sum;
}

namespace {

struct group_laws {
  std::uint64_t n = 0;
  double p = 0.0;
  binomial_law node;  // L_i
  binomial_law edge;  // lambda_i
};

std::vector<group_laws> make_laws(const network_topology& topo, std::span<const double> g, std::uint64_t slots) {
  if (slots < 1) throw config_error("slot count must be at least 1");
  const auto p = transmission_probabilities(topo, g);
  std::vector<group_laws> laws(topo.num_groups());
  for (std::size_t i = 0; i < laws.size(); ++i) {
    laws[i].n = topo.group(i).num_users;
    laws[i].p = p[i];
    laws[i].node = {slots, p[i]};
    laws[i].edge = laws[i].node.edge();
  }
  return laws;
}

}  // namespace

evolution_result evolve_noncoop(const network_topology& topo, std::span<const double> g, std::uint64_t slots,
                                const evolution_options& opts) {
  const auto laws = make_laws(topo, g, slots);
  const std::size_t groups = topo.num_groups();

  // One (group, BS) edge per connection; x and w live on edges.
  std::vector<std::size_t> edge_begin(groups + 1, 0);
  for (std::size_t i = 0; i < groups; ++i) edge_begin[i + 1] = edge_begin[i] + topo.coverage(i);
  const std::size_t edges = edge_begin[groups];
  auto edge_of = [&](std::size_t i, int bs) {
    const auto st = topo.stations_of(i);
    return edge_begin[i] + static_cast<std::size_t>(std::find(st.begin(), st.end(), bs) - st.begin());
  };

  struct bs_edge {
    std::size_t group;
    std::size_t edge;
  };
  std::vector<std::vector<bs_edge>> bs_edges(static_cast<std::size_t>(topo.num_bs()));
  std::size_t busiest = 0;
  for (int bs = 0; bs < topo.num_bs(); ++bs) {
    for (auto m : topo.groups_at(bs)) bs_edges[static_cast<std::size_t>(bs)].push_back({m, edge_of(m, bs)});
    busiest = std::max(busiest, bs_edges[static_cast<std::size_t>(bs)].size());
  }
  std::vector<double> others(busiest, 1.0);

  std::vector<double> x(edges, 1.0), w(edges, 1.0), idle(edges, 1.0), sole(edges, 1.0);
  for (std::size_t i = 0; i < groups; ++i)
    if (laws[i].n == 0) std::fill(x.begin() + static_cast<long>(edge_begin[i]), x.begin() + static_cast<long>(edge_begin[i + 1]), 0.0);

  evolution_result res;
  for (int l = 1; l <= opts.max_iter; ++l) {
    for (std::size_t i = 0; i < groups; ++i) {
      for (std::size_t e = edge_begin[i]; e < edge_begin[i + 1]; ++e) {
        const auto t = group_slot_terms(laws[i].n, laws[i].p, x[e]);
        idle[e] = t.idle;
        sole[e] = t.sole;
      }
    }
    double change = 0.0;
    for (const auto& list : bs_edges) {
      // Product of idle over the other groups at this BS, via prefix and suffix products.
      double prefix = 1.0;
      for (std::size_t k = 0; k < list.size(); ++k) {
        others[k] = prefix;
        prefix *= idle[list[k].edge];
      }
      double suffix = 1.0;
      for (std::size_t k = list.size(); k-- > 0;) {
        const auto& [group, e] = list[k];
        if (laws[group].n != 0) w[e] = checked_probability(1.0 - sole[e] * others[k] * suffix, "w_ij");
        suffix *= idle[e];
      }
    }
    for (std::size_t i = 0; i < groups; ++i) {
      if (laws[i].n == 0) continue;
      for (std::size_t e = edge_begin[i]; e < edge_begin[i + 1]; ++e) {
        const double nx = laws[i].edge(w[e]);
        change = std::max(change, std::abs(nx - x[e]));
        x[e] = nx;
      }
    }
    res.iterations = l;
    if (opts.trace) {
      trace_point tp;
      tp.iteration = l;
      tp.singleton.assign(groups, 0.0);
      tp.collided.assign(groups, 0.0);
      for (std::size_t i = 0; i < groups; ++i) {
        double prod = 1.0;
        for (std::size_t e = edge_begin[i]; e < edge_begin[i + 1]; ++e) prod *= w[e];
        tp.singleton[i] = laws[i].n == 0 ? 0.0 : 1.0 - prod;
      }
      res.trace.push_back(std::move(tp));
    }
    if (change < opts.tol) {
      res.converged = true;
      break;
    }
  }

  res.plr.assign(groups, 0.0);
  res.x.assign(groups, 0.0);
  res.w.assign(groups, 0.0);
  for (std::size_t i = 0; i < groups; ++i) {
    if (laws[i].n == 0) continue;
    double prod = 1.0, xmax = 0.0;
    for (std::size_t e = edge_begin[i]; e < edge_begin[i + 1]; ++e) {
      prod *= w[e];
      xmax = std::max(xmax, x[e]);
    }
    res.w[i] = prod;
    res.x[i] = xmax;
    res.plr[i] = checked_probability(laws[i].node(prod), "p_e");
  }
  return res;
}

evolution_result evolve_coop(const network_topology& topo, const retrieval_model& model, std::span<const double> g,
                             std::uint64_t slots, const evolution_options& opts) {
  if (model.num_groups() != topo.num_groups()) throw config_error("retrieval model does not match topology");
  const auto laws = make_laws(topo, g, slots);
  const std::size_t groups = topo.num_groups();

  std::vector<double> x(groups, 1.0), w(groups, 1.0), idle(groups), single(groups), sole(groups);
  for (std::size_t i = 0; i < groups; ++i)
    if (laws[i].n == 0) x[i] = 0.0;

  evolution_result res;
  for (int l = 1; l <= opts.max_iter; ++l) {
    for (std::size_t k = 0; k < groups; ++k) {
      const auto t = group_slot_terms(laws[k].n, laws[k].p, x[k]);
      idle[k] = t.idle;
      single[k] = t.single;
      sole[k] = t.sole;
    }
    trace_point tp;
    if (opts.trace) {
      tp.iteration = l;
      tp.singleton.assign(groups, 0.0);
      tp.collided.assign(groups, 0.0);
    }
    for (std::size_t i = 0; i < groups; ++i) {
      if (laws[i].n == 0) continue;
      const auto split = model.diagram(i).evaluate(idle, single);
      w[i] = checked_probability(1.0 - sole[i] * split.total(), "w_i");
      if (opts.trace) {
        tp.singleton[i] = sole[i] * split.singleton;
        tp.collided[i] = sole[i] * split.collided;
      }
    }
    double change = 0.0;
    for (std::size_t i = 0; i < groups; ++i) {
      if (laws[i].n == 0) continue;
      const double nx = laws[i].edge(w[i]);
      change = std::max(change, std::abs(nx - x[i]));
      x[i] = nx;
    }
    res.iterations = l;
    if (opts.trace) res.trace.push_back(std::move(tp));
    if (change < opts.tol) {
      res.converged = true;
      break;
    }
  }

  res.plr.assign(groups, 0.0);
  res.x = x;
  res.w = w;
  for (std::size_t i = 0; i < groups; ++i) {
    if (laws[i].n == 0) {
      res.w[i] = 0.0;
      continue;
    }
    res.plr[i] = checked_probability(laws[i].node(w[i]), "p_e");
  }
  return res;
}

analyzer::analyzer(network_topology topo, analysis_mode mode, const options& opts)
    : topo_(std::move(topo)), mode_(mode), evo_(opts.evolution) {
  if (mode_ == analysis_mode::coop) model_ = std::make_shared<retrieval_model>(topo_, opts.retrieval);
}

analyzer::analyzer(network_topology topo, std::shared_ptr<const retrieval_model> model, const evolution_options& evo)
    : topo_(std::move(topo)), mode_(analysis_mode::coop), evo_(evo), model_(std::move(model)) {
  if (!model_ || model_->num_groups() != topo_.num_groups()) throw config_error("retrieval model does not match topology");
}

evolution_result analyzer::evolve(std::span<const double> g, std::uint64_t slots) const {
  return evolve(g, slots, evo_);
}

evolution_result analyzer::evolve(std::span<const double> g, std::uint64_t slots, const evolution_options& evo) const {
  switch (mode_) {
    case analysis_mode::coop: return evolve_coop(topo_, *model_, g, slots, evo);
    case analysis_mode::noncoop: return evolve_noncoop(topo_, g, slots, evo);
    case analysis_mode::bound: return evolve_bound(topo_, g, slots, evo);
  }
  throw config_error("unknown analysis mode");
}

}  // namespace coopaloha
