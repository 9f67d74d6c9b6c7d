#include "coopaloha/peak_search.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "coopaloha/bounds.hpp"
#include "coopaloha/error.hpp"

namespace coopaloha {

namespace {

curve_point evaluate_point(const analyzer& an, std::span<const double> g, std::uint64_t slots) {
  auto r = an.evolve(g, slots);
  curve_point pt;
  pt.slots = slots;
  pt.plr_avg = average_plr(an.topology(), r.plr);
  pt.throughput = throughput(an.topology(), r.plr, slots);
  pt.converged = r.converged;
  pt.plr = std::move(r.plr);
  return pt;
}

}  // namespace

plr_curve compute_plr_curve(const analyzer& an, std::span<const double> g, std::span<const std::uint64_t> slots) {
  if (slots.empty()) throw config_error("T range is empty");
  for (std::size_t k = 1; k < slots.size(); ++k)
    if (slots[k] <= slots[k - 1]) throw config_error("T range must be strictly ascending");
  plr_curve curve;
  for (auto t : slots) {
    curve.points.push_back(evaluate_point(an, g, t));
    if (curve.points.back().throughput > curve.points[curve.peak].throughput) curve.peak = curve.points.size() - 1;
  }
  return curve;
}

slot_range default_slot_range(const network_topology& topo) {
  const double n = static_cast<double>(topo.total_users());
  const double m = topo.num_bs();
  slot_range r;
  r.min = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(0.5 * n / (m * single_bs_peak_throughput))));
  r.max = std::max<std::uint64_t>(r.min + 1, static_cast<std::uint64_t>(std::ceil(2.0 * n / m)));
  return r;
}

peak_result find_peak(const analyzer& an, std::span<const double> g, const peak_options& opts) {
  slot_range range = opts.range;
  if (range.min == 0 && range.max == 0) range = default_slot_range(an.topology());
  if (range.min < 1 || range.max < range.min) throw config_error("invalid T search range");

  std::map<std::uint64_t, curve_point> seen;
  auto at = [&](std::uint64_t t) -> const curve_point& {
    auto it = seen.find(t);
    if (it == seen.end()) it = seen.emplace(t, evaluate_point(an, g, t)).first;
    return it->second;
  };
  // Scans `count` evenly spaced points of [lo, hi]; returns the best T and
  // its neighbours in the scan.
  struct scan_result {
    std::uint64_t best, left, right;
  };
  auto scan = [&](std::uint64_t lo, std::uint64_t hi, std::size_t count) {
    std::vector<std::uint64_t> pts;
    const std::uint64_t span = hi - lo;
    if (span + 1 <= count) {
      for (std::uint64_t t = lo; t <= hi; ++t) pts.push_back(t);
    } else {
      for (std::size_t k = 0; k < count; ++k)
        pts.push_back(lo + static_cast<std::uint64_t>(std::llround(static_cast<double>(span) * static_cast<double>(k) /
                                                                    static_cast<double>(count - 1))));
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    }
    std::size_t best = 0;
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (at(pts[k]).throughput > at(pts[best]).throughput) best = k;
    return scan_result{pts[best], pts[best > 0 ? best - 1 : 0], pts[std::min(best + 1, pts.size() - 1)]};
  };

  auto coarse = scan(range.min, range.max, std::max<std::size_t>(opts.coarse_points, 3));
  for (int ext = 0; ext < opts.max_extensions; ++ext) {
    if (coarse.best == range.max) {
      const auto width = range.max - range.min;
      range.min = coarse.left;
      range.max = range.max + std::max<std::uint64_t>(width, 2);
    } else if (coarse.best == range.min && range.min > 1) {
      const auto width = range.max - range.min;
      range.max = coarse.right;
      range.min = range.min > width ? range.min - width : 1;
    } else {
      break;
    }
    coarse = scan(range.min, range.max, std::max<std::size_t>(opts.coarse_points, 3));
  }

  auto cur = coarse;
  while (cur.right - cur.left > 2) cur = scan(cur.left, cur.right, std::max<std::size_t>(opts.refine_points, 3) + 2);

  std::uint64_t best = cur.best;
  for (std::uint64_t t = cur.left; t <= cur.right; ++t)
    if (at(t).throughput > at(best).throughput) best = t;

  const auto& pt = at(best);
  peak_result out;
  out.slots = best;
  out.throughput = pt.throughput;
  out.plr_avg = pt.plr_avg;
  out.plr = pt.plr;
  out.converged = pt.converged;
  out.evaluations = seen.size();
  return out;
}

double diversity_gain(double coop_peak, double noncoop_peak) {
  if (!(noncoop_peak > 0.0)) throw config_error("diversity gain undefined: non-cooperative peak throughput is zero");
  return coop_peak / noncoop_peak;
}

}  // namespace coopaloha
