#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include <coopaloha/bounds.hpp>
#include <coopaloha/error.hpp>
#include <coopaloha/export.hpp>
#include <coopaloha/peak_search.hpp>
#include <coopaloha/rng.hpp>
#include <coopaloha/walk_graph.hpp>

#include "acceptance.hpp"
#include "networks.hpp"

namespace coopaloha::cli {

namespace {

using ojson = nlohmann::ordered_json;

experiment_config require_config(const run_options& opts) {
  if (!opts.config_path) throw config_error("--config is required for this command");
  return load_config_file(*opts.config_path);
}

const network_topology& require_topology(const experiment_config& cfg) {
  if (!cfg.topology) throw config_error("config has no topology");
  return *cfg.topology;
}

const std::vector<double>& require_degrees(const experiment_config& cfg) {
  if (cfg.g.empty()) throw config_error("config has no degrees");
  return cfg.g;
}

std::uint64_t seed_of(const run_options& opts, const experiment_config& cfg) {
  return opts.seed.value_or(cfg.seed.value_or(1));
}

std::string stem(const std::string& command, const experiment_config& cfg) {
  return cfg.label.empty() ? command : command + "-" + cfg.label;
}

void write_file(const run_options& opts, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(opts.out);
  const auto path = opts.out / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw error(error_kind::config, "cannot write " + path.string());
  f << content;
  std::printf("wrote %s\n", path.string().c_str());
}

analyzer::options analysis_options(const run_options& opts) {
  analyzer::options a;
  a.retrieval.workers = opts.workers;
  a.retrieval.allow_long_running = opts.allow_long_running;
  a.retrieval.cache_dir = default_table_cache_dir();
  return a;
}

ojson metadata_json(const run_metadata& meta) {
  return {{"command", meta.command},
          {"config_hash", meta.config_hash},
          {"version", library_version()},
          {"seed", meta.seed},
          {"rng", rng_identifier}};
}

std::vector<std::uint64_t> auto_grid(const network_topology& topo, std::size_t points) {
  const auto r = default_slot_range(topo);
  std::vector<std::uint64_t> grid;
  points = std::max<std::size_t>(points, 2);
  for (std::size_t k = 0; k < points; ++k) {
    const auto t = r.min + static_cast<std::uint64_t>(std::llround(static_cast<double>(r.max - r.min) * k / (points - 1)));
    if (grid.empty() || t > grid.back()) grid.push_back(t);
  }
  return grid;
}

}  // namespace

int cmd_analyze(const run_options& opts) {
  const auto cfg = require_config(opts);
  const auto& topo = require_topology(cfg);
  const auto& g = require_degrees(cfg);
  const auto meta = make_metadata("analyze", cfg.canonical_text, 0);

  const analyzer an(topo, cfg.mode, analysis_options(opts));
  const auto grid = cfg.slots.empty() ? auto_grid(topo, cfg.grid_points) : cfg.slots;
  const auto curve = compute_plr_curve(an, g, grid);
  const auto peak = find_peak(an, g);

  const auto name = stem("analyze", cfg);
  if (opts.format == "csv") write_file(opts, name + ".csv", curve_csv(curve, meta));
  write_file(opts, name + ".json", peak_json(curve, peak, cfg.mode, meta));
  if (opts.trace) {
    evolution_options evo = an.evolution();
    evo.trace = true;
    write_file(opts, name + "-trace.csv", trace_csv(an.evolve(g, peak.slots, evo), meta));
  }
  std::printf("mode=%s peak throughput %.4f at T=%llu (p_e=%.4g, 1-p_e=%.4f)\n", std::string(to_string(cfg.mode)).c_str(),
              peak.throughput, static_cast<unsigned long long>(peak.slots), peak.plr_avg, 1.0 - peak.plr_avg);
  if (!peak.converged) {
    std::fprintf(stderr, "density evolution did not converge at the peak\n");
    return exit_non_convergence;
  }
  return exit_ok;
}

int cmd_simulate(const run_options& opts) {
  const auto cfg = require_config(opts);
  const auto& topo = require_topology(cfg);
  const auto seed = seed_of(opts, cfg);
  const auto meta = make_metadata("simulate", cfg.canonical_text, seed);

  simulation_spec spec{topo};
  spec.kind = cfg.simulate.kind;
  spec.alpha = cfg.alpha;
  spec.slot_cap = cfg.simulate.slot_cap;
  spec.slots = cfg.simulate.load ? slots_for_load(topo, *cfg.simulate.load) : cfg.simulate.slots;
  spec.lambda = cfg.simulate.lambda;
  if (spec.kind != frame_kind::spatio_temporal) spec.g = require_degrees(cfg);
  const std::size_t trials = opts.fast ? std::min<std::size_t>(cfg.simulate.trials, 10) : cfg.simulate.trials;

  const auto summary = monte_carlo(spec, trials, seed, opts.workers);
  const auto name = stem("simulate", cfg);
  if (opts.format == "csv") write_file(opts, name + ".csv", simulation_csv(summary, topo, meta));
  write_file(opts, name + ".json", simulation_json(summary, topo, meta, opts.format == "json"));
  std::printf("trials=%zu throughput %.4f +- %.4f, T %.1f, PLR %.4g, slot-cap hits %zu\n", summary.trials,
              summary.throughput.mean, summary.throughput.std_error, summary.slots.mean, summary.plr.mean,
              summary.slot_cap_hits);
  return exit_ok;
}

int cmd_optimize(const run_options& opts) {
  const auto cfg = require_config(opts);
  const auto& topo = require_topology(cfg);
  const auto seed = seed_of(opts, cfg);
  const auto meta = make_metadata("optimize", cfg.canonical_text, seed);

  optimization_spec spec{topo};
  spec.alpha = cfg.alpha;
  spec.lower = cfg.lower;
  spec.upper = cfg.upper;
  spec.de = opts.fast ? de_parameters::fast() : cfg.de;
  spec.mode = cfg.mode;
  spec.analysis = analysis_options(opts);
  const degree_optimizer opt(spec);
  const auto res = opt.optimize(seed, opts.workers);

  const auto name = stem("optimize", cfg);
  if (opts.format == "csv")
    write_file(opts, name + ".csv",
               metadata_comment(meta) + optimization_csv_header(topo.num_groups()) +
                   optimization_csv_row(cfg.label.empty() ? "run" : cfg.label, res));
  write_file(opts, name + ".json", optimization_json(res, meta));

  std::printf("%s: throughput %.4f at T=%llu (1-p_e=%.4f), G per class:", res.best.feasible ? "feasible" : "INFEASIBLE",
              res.best.throughput, static_cast<unsigned long long>(res.best.slots), 1.0 - res.best.plr_avg);
  for (double v : res.class_values) std::printf(" %.4f", v);
  std::printf("\n");
  if (!res.best.feasible) {
    std::fprintf(stderr, "no feasible candidate; best shortfall %.4g\n", -res.best.score);
    return exit_infeasible;
  }
  return exit_ok;
}

int cmd_bounds(const run_options& opts) {
  const auto cfg = opts.config_path ? load_config_file(*opts.config_path) : experiment_config{};
  const auto seed = seed_of(opts, cfg);
  const auto meta = make_metadata("bounds", cfg.canonical_text, seed);

  std::string csv = metadata_comment(meta);
  csv +=
      "M,groups,S_nc,S_exact,gamma_exact,S_lower,gamma_lower,S_lower_opt,gamma_lower_opt,S_upper,gamma_upper,"
      "exact_status\n";
  auto js = ojson::array();

  for (int m : cfg.bounds.bs_counts) {
    const auto topo = symmetric_network(m, cfg.bounds.users_per_group);
    const auto base = uniform_baseline_degrees(topo, cfg.bounds.single_bs_degree);
    const analyzer nc(topo, analysis_mode::noncoop, analysis_options(opts));
    const double s_nc = find_peak(nc, base).throughput;

    const bool have_reference = m >= 1 && m <= 4;
    const auto g = have_reference ? degrees_by_coverage(topo, symmetric_reference_degrees(m)) : base;

    std::string status = "ok";
    double s_exact = std::nan("");
    try {
      const analyzer co(topo, analysis_mode::coop, analysis_options(opts));
      s_exact = find_peak(co, g).throughput;
    } catch (const guard_error& e) {
      status = "refused";
      std::fprintf(stderr, "M=%d: %s\n", m, e.what());
    }

    const analyzer lb(topo, analysis_mode::bound, analysis_options(opts));
    const double s_lower = find_peak(lb, g).throughput;

    optimization_spec ospec{topo};
    ospec.alpha = cfg.alpha;
    ospec.mode = analysis_mode::bound;
    ospec.de = opts.fast ? de_parameters{20, 0.2, 8, 0.9} : de_parameters::fast();
    ospec.analysis = analysis_options(opts);
    const auto best = degree_optimizer(ospec, std::make_shared<const analyzer>(topo, analysis_mode::bound,
                                                                                ospec.analysis))
                          .optimize(seed, opts.workers);
    const double s_lower_opt = std::max(best.best.throughput, s_lower);
    const double s_upper = upper_bound_throughput(m);

    auto f = [](double v) { return std::isnan(v) ? std::string() : format_double(v); };
    csv += std::to_string(m) + ',' + std::to_string(topo.num_groups()) + ',' + f(s_nc) + ',' + f(s_exact) + ',' +
           f(s_exact / s_nc) + ',' + f(s_lower) + ',' + f(s_lower / s_nc) + ',' + f(s_lower_opt) + ',' +
           f(s_lower_opt / s_nc) + ',' + f(s_upper) + ',' + f(s_upper / s_nc) + ',' + status + '\n';
    js.push_back({{"M", m},
                  {"S_nc", s_nc},
                  {"S_exact", std::isnan(s_exact) ? ojson(nullptr) : ojson(s_exact)},
                  {"S_lower", s_lower},
                  {"S_lower_opt", s_lower_opt},
                  {"S_upper", s_upper},
                  {"exact_status", status}});
    std::printf("M=%2d S_nc=%.4f exact=%s lower=%.4f lower_opt=%.4f upper=%.4f gamma=[%.3f, %s, %.3f]\n", m, s_nc,
                std::isnan(s_exact) ? "refused" : format_double(s_exact).c_str(), s_lower, s_lower_opt, s_upper,
                s_lower_opt / s_nc, std::isnan(s_exact) ? "-" : format_double(s_exact / s_nc).c_str(),
                s_upper / s_nc);
    std::fflush(stdout);
  }
  if (opts.format == "csv") write_file(opts, "bounds.csv", csv);
  ojson doc;
  doc["metadata"] = metadata_json(meta);
  doc["rows"] = std::move(js);
  write_file(opts, "bounds.json", doc.dump(2) + "\n");
  return exit_ok;
}

int cmd_compare(const run_options& opts) {
  const auto cfg = require_config(opts);
  const auto& topo = require_topology(cfg);
  const auto& g = require_degrees(cfg);
  const auto seed = seed_of(opts, cfg);
  const auto meta = make_metadata("compare", cfg.canonical_text, seed);
  const std::size_t trials = opts.fast ? std::min<std::size_t>(cfg.compare.trials, 5) : cfg.compare.trials;
  const double m = topo.num_bs();

  std::string csv = metadata_comment(meta);
  csv +=
      "load,T,frameless_S,frameless_S_se,frameless_plr,frameless_plr_se,baseline_S,baseline_S_se,baseline_plr,"
      "baseline_plr_se,delta_S,plr_floor\n";
  auto rows = ojson::array();
  std::vector<double> plr_gap;
  for (double load : cfg.compare.loads) {
    const auto t = slots_for_load(topo, load);
    simulation_spec fl{topo, frame_kind::frameless_fixed, g};
    fl.slots = t;
    simulation_spec bl{topo, cfg.compare.baseline, g};
    bl.slots = t;
    bl.lambda = cfg.compare.lambda;
    const auto a = monte_carlo(fl, trials, seed, opts.workers);
    const auto b = monte_carlo(bl, trials, seed, opts.workers);
    const double floor = silent_user_floor(topo, g, t);
    const double delta = (a.throughput.mean - b.throughput.mean) / m;
    csv += format_double(load) + ',' + std::to_string(t) + ',' + format_double(a.throughput.mean / m) + ',' +
           format_double(a.throughput.std_error / m) + ',' + format_double(a.plr.mean) + ',' +
           format_double(a.plr.std_error) + ',' + format_double(b.throughput.mean / m) + ',' +
           format_double(b.throughput.std_error / m) + ',' + format_double(b.plr.mean) + ',' +
           format_double(b.plr.std_error) + ',' + format_double(delta) + ',' + format_double(floor) + '\n';
    rows.push_back({{"load", load},
                    {"T", t},
                    {"frameless_S", a.throughput.mean / m},
                    {"frameless_plr", a.plr.mean},
                    {"baseline_S", b.throughput.mean / m},
                    {"baseline_plr", b.plr.mean},
                    {"delta_S", delta},
                    {"plr_floor", floor}});
    plr_gap.push_back(a.plr.mean - b.plr.mean);
    std::printf("load %.3f T=%llu frameless S=%.4f plr=%.3g | baseline S=%.4f plr=%.3g | delta %.4f\n", load,
                static_cast<unsigned long long>(t), a.throughput.mean / m, a.plr.mean, b.throughput.mean / m,
                b.plr.mean, delta);
  }
  // First load where the frameless PLR drops below the baseline PLR.
  ojson crossover = nullptr;
  for (std::size_t k = 1; k < plr_gap.size(); ++k) {
    if (plr_gap[k - 1] > 0.0 && plr_gap[k] <= 0.0) {
      const double x0 = cfg.compare.loads[k - 1], x1 = cfg.compare.loads[k];
      crossover = x0 + (x1 - x0) * plr_gap[k - 1] / (plr_gap[k - 1] - plr_gap[k]);
      break;
    }
  }
  const auto name = stem("compare", cfg);
  if (opts.format == "csv") write_file(opts, name + ".csv", csv);
  ojson doc;
  doc["metadata"] = metadata_json(meta);
  doc["trials"] = trials;
  doc["plr_crossover_load"] = crossover;
  doc["rows"] = std::move(rows);
  write_file(opts, name + ".json", doc.dump(2) + "\n");
  return exit_ok;
}

int cmd_repro(const run_options& opts) {
  acceptance_options a;
  a.scaled = opts.fast;
  a.workers = opts.workers;
  a.seed = opts.seed.value_or(1);
  a.cache_dir = default_table_cache_dir();
  a.allow_long_running = opts.allow_long_running;
  bool all = true;
  run_acceptance(a, [&](const check_result& r) {
    std::printf("%s\n", format_check(r).c_str());
    std::fflush(stdout);
    all = all && r.passed;
  });
  return all ? exit_ok : exit_failure;
}

}  // namespace coopaloha::cli
