#include "coopaloha/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "coopaloha/error.hpp"

namespace coopaloha {

frame_result run_trial(const simulation_spec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case frame_kind::frameless: return run_frame(spec.topology, spec.g, spec.alpha, seed, spec.slot_cap);
    case frame_kind::frameless_fixed: return run_fixed_frame(spec.topology, spec.g, spec.slots, seed);
    case frame_kind::spatio_temporal: return run_spatio_temporal(spec.topology, spec.lambda, spec.slots, seed);
  }
  throw config_error("unknown frame kind");
}

namespace {

mean_stderr summarize(const std::vector<double>& v) {
  mean_stderr out;
  if (v.empty()) return out;
  double sum = 0.0;
  for (double x : v) sum += x;
  out.mean = sum / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.std_error = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
  }
  return out;
}

}  // namespace

simulation_summary monte_carlo(const simulation_spec& spec, std::size_t trials, std::uint64_t master_seed,
                               unsigned workers) {
  if (trials < 1) throw config_error("need at least one trial");
  std::vector<trial_record> records(trials);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      records[t].trial = t;
      records[t].seed = trial_seed(master_seed, t);
      records[t].frame = run_trial(spec, records[t].seed);
    }
  };
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::min<std::size_t>(trials, 256)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  simulation_summary s;
  s.trials = trials;
  std::vector<double> thr, slots, plr;
  s.group_plr.assign(spec.topology.num_groups(), 0.0);
  for (const auto& r : records) {
    thr.push_back(r.frame.throughput);
    slots.push_back(static_cast<double>(r.frame.slots));
    plr.push_back(r.frame.plr(spec.topology));
    const auto gp = r.frame.group_plr(spec.topology);
    for (std::size_t i = 0; i < gp.size(); ++i) s.group_plr[i] += gp[i] / static_cast<double>(trials);
    if (r.frame.terminated_by == termination::slot_cap) ++s.slot_cap_hits;
  }
  s.throughput = summarize(thr);
  s.slots = summarize(slots);
  s.plr = summarize(plr);
  s.records = std::move(records);
  return s;
}

}  // namespace coopaloha
