#include "coopaloha/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "coopaloha/error.hpp"
#include "coopaloha/rng.hpp"

namespace coopaloha {

double quantize_degree(double g) { return std::round(g * 1e4) / 1e4; }

degree_optimizer::degree_optimizer(optimization_spec spec)
    : degree_optimizer(spec, std::make_shared<const analyzer>(spec.topology, spec.mode, spec.analysis)) {}

degree_optimizer::degree_optimizer(optimization_spec spec, std::shared_ptr<const analyzer> an)
    : spec_(std::move(spec)), analyzer_(std::move(an)) {
  if (!analyzer_ || !(analyzer_->topology() == spec_.topology) || analyzer_->mode() != spec_.mode)
    throw config_error("optimizer: analyzer does not match the topology or mode");
  if (!(spec_.alpha > 0.0 && spec_.alpha <= 1.0)) throw config_error("alpha must be in (0, 1]");
  if (spec_.de.population < 4) throw config_error("DE population must be at least 4");
  if (!(spec_.upper > spec_.lower) || spec_.lower < 0.0) throw config_error("degree bounds are degenerate");
  if (!(spec_.de.crossover_rate >= 0.0 && spec_.de.crossover_rate <= 1.0)) throw config_error("crossover rate outside [0, 1]");
  ties_ = spec_.ties.empty() ? effective_ties(spec_.topology) : spec_.ties;
  // Validates the partition.
  (void)network_topology(spec_.topology.num_bs(),
                         std::vector<group_spec>(spec_.topology.groups().begin(), spec_.topology.groups().end()), ties_);

  for (const auto& cls : ties_) {
    double hi = spec_.upper;
    double lo = spec_.lower;
    bool any_users = false;
    for (auto i : cls) {
      const auto n = spec_.topology.group(i).num_users;
      if (n == 0) continue;
      any_users = true;
      hi = std::min(hi, static_cast<double>(n));
    }
    // The bound analysis needs G_i > 0.
    if (spec_.mode == analysis_mode::bound) lo = std::max(lo, 1e-4);
    if (!any_users) hi = lo = 0.0;
    if (hi < lo) throw config_error("degree bounds exceed a group size");
    bounds_.emplace_back(lo, hi);
  }
}

fitness_value degree_optimizer::fitness(std::span<const double> class_values) const {
  if (class_values.size() != ties_.size()) throw config_error("one degree per tie class expected");
  std::vector<double> snapped(class_values.begin(), class_values.end());
  for (auto& v : snapped) v = quantize_degree(v);
  return evaluate(expand_ties(ties_, spec_.topology.num_groups(), snapped));
}

fitness_value degree_optimizer::fitness_of_groups(std::span<const double> g) const { return evaluate(g); }

fitness_value degree_optimizer::evaluate(std::span<const double> g) const {
  std::vector<std::int64_t> key;
  key.reserve(g.size());
  for (double v : g) key.push_back(std::llround(v * 1e4));
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }

  fitness_value f;
  try {
    const auto pk = find_peak(*analyzer_, g, spec_.peak);
    f.throughput = pk.throughput;
    f.slots = pk.slots;
    f.plr_avg = pk.plr_avg;
    const double delivered = 1.0 - pk.plr_avg;
    f.feasible = pk.converged && delivered > spec_.alpha;
    f.score = f.feasible ? pk.throughput : -std::max(0.0, spec_.alpha - delivered);
  } catch (const error&) {
    f = fitness_value{};
    f.score = -1.0;
  }

  std::lock_guard lock(cache_mutex_);
  cache_.emplace(std::move(key), f);
  return f;
}

optimization_result degree_optimizer::optimize(std::uint64_t seed, unsigned workers) const {
  const std::size_t dim = ties_.size();
  const std::size_t np = spec_.de.population;
  frame_rng rng(splitmix64(seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto reflect = [&](double v, std::size_t d) {
    const auto [lo, hi] = bounds_[d];
    if (lo == hi) return lo;
    for (int k = 0; k < 8 && (v < lo || v > hi); ++k) v = v < lo ? 2 * lo - v : 2 * hi - v;
    return quantize_degree(std::clamp(v, lo, hi));
  };

  std::vector<std::vector<double>> pop(np, std::vector<double>(dim));
  for (auto& cand : pop)
    for (std::size_t d = 0; d < dim; ++d) {
      const auto [lo, hi] = bounds_[d];
      cand[d] = quantize_degree(lo + (hi - lo) * unit(rng));
    }

  auto evaluate_all = [&](const std::vector<std::vector<double>>& cands) {
    std::vector<fitness_value> out(cands.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t k = next++; k < cands.size(); k = next++) out[k] = fitness(cands[k]);
    };
    const unsigned nw = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(cands.size()));
    if (nw == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < nw; ++w) pool.emplace_back(work);
    }
    return out;
  };

  auto fit = evaluate_all(pop);
  auto best_index = [&] {
    std::size_t b = 0;
    for (std::size_t k = 1; k < np; ++k)
      if (fit[k].score > fit[b].score) b = k;
    return b;
  };

  optimization_result res;
  res.history.push_back(fit[best_index()].score);

  std::uniform_int_distribution<std::size_t> pick(0, np - 1);
  std::uniform_int_distribution<std::size_t> pick_dim(0, dim - 1);
  for (std::size_t gen = 0; gen < spec_.de.generations; ++gen) {
    // All randomness is drawn here, before the parallel evaluation.
    std::vector<std::vector<double>> trials(np, std::vector<double>(dim));
    for (std::size_t k = 0; k < np; ++k) {
      std::size_t a, b, c;
      do a = pick(rng); while (a == k);
      do b = pick(rng); while (b == k || b == a);
      do c = pick(rng); while (c == k || c == a || c == b);
      const std::size_t forced = pick_dim(rng);
      for (std::size_t d = 0; d < dim; ++d) {
        const bool cross = d == forced || unit(rng) < spec_.de.crossover_rate;
        trials[k][d] = cross ? reflect(pop[a][d] + spec_.de.mutant_factor * (pop[b][d] - pop[c][d]), d) : pop[k][d];
      }
    }
    const auto trial_fit = evaluate_all(trials);
    for (std::size_t k = 0; k < np; ++k) {
      if (trial_fit[k].score >= fit[k].score) {
        pop[k] = std::move(trials[k]);
        fit[k] = trial_fit[k];
      }
    }
    res.history.push_back(fit[best_index()].score);
  }

  const auto b = best_index();
  res.class_values = pop[b];
  res.g = expand_ties(ties_, spec_.topology.num_groups(), pop[b]);
  res.best = fit[b];
  {
    std::lock_guard lock(cache_mutex_);
    res.evaluations = cache_.size();
  }
  return res;
}

}  // namespace coopaloha
