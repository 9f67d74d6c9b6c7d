#include "coopaloha/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "coopaloha/degrees.hpp"
#include "coopaloha/error.hpp"

namespace coopaloha {

double upper_bound_throughput(int num_bs) {
  if (num_bs < 1) throw config_error("upper bound needs at least one base station");
  return num_bs * single_bs_peak_throughput;
}

std::optional<std::vector<double>> solve_linear(std::vector<double> q, std::vector<double> b, std::size_t n,
                                                double singular_tol) {
  double scale = 0.0;
  for (double v : q) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return std::nullopt;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(q[r * n + col]) > std::abs(q[piv * n + col])) piv = r;
    if (std::abs(q[piv * n + col]) < singular_tol * scale) return std::nullopt;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(q[col * n + c], q[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = q[r * n + col] / q[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) q[r * n + c] -= f * q[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> y(n);
  for (std::size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= q[r * n + c] * y[c];
    y[r] = acc / q[r * n + r];
  }
  return y;
}

union_bound union_lower_bound(std::span<const double> p, std::span<const double> q) {
  const std::size_t n = p.size();
  if (q.size() != n * n) throw config_error("union bound: Q must be n x n");
  if (n == 0) return {};
  const double pmax = *std::max_element(p.begin(), p.end());
  const double psum = std::min(1.0, std::accumulate(p.begin(), p.end(), 0.0));
  if (n == 1) return {pmax, false};
  auto y = solve_linear(std::vector<double>(q.begin(), q.end()), std::vector<double>(p.begin(), p.end()), n);
  if (!y) return {pmax, true};
  double v = 0.0;
  for (std::size_t a = 0; a < n; ++a) v += p[a] * (*y)[a];
  if (!std::isfinite(v)) return {pmax, true};
  return {std::clamp(v, pmax, std::max(pmax, psum)), false};
}

namespace {

// Product that can later drop one factor, even a zero one.
struct zero_aware_product {
  double nonzero = 1.0;
  int zeros = 0;

  void multiply(double v) {
    if (v == 0.0)
      ++zeros;
    else
      nonzero *= v;
  }
  double value() const { return zeros > 0 ? 0.0 : nonzero; }
  double without(double v) const {
    if (v == 0.0) return zeros > 1 ? 0.0 : nonzero;
    return zeros > 0 ? 0.0 : nonzero / v;
  }
};

}  // namespace

evolution_result evolve_bound(const network_topology& topo, std::span<const double> g, std::uint64_t slots,
                              const evolution_options& opts) {
  if (slots < 1) throw config_error("slot count must be at least 1");
  const auto p = transmission_probabilities(topo, g);
  const std::size_t groups = topo.num_groups();
  for (std::size_t i = 0; i < groups; ++i)
    if (topo.group(i).num_users > 0 && !(g[i] > 0.0))
      throw config_error("bound analysis needs G_i > 0 for every non-empty group (group " + std::to_string(i + 1) + ")");

  std::vector<binomial_law> node(groups), edge(groups);
  for (std::size_t i = 0; i < groups; ++i) {
    node[i] = {slots, p[i]};
    edge[i] = node[i].edge();
  }

  std::vector<double> x(groups, 1.0), w(groups, 1.0), idle(groups), sole(groups);
  for (std::size_t i = 0; i < groups; ++i)
    if (topo.group(i).num_users == 0) x[i] = 0.0;

  const int num_bs = topo.num_bs();
  std::vector<zero_aware_product> pair_idle(static_cast<std::size_t>(num_bs * num_bs));
  evolution_result res;
  std::vector<double> pv, qm;
  for (int l = 1; l <= opts.max_iter; ++l) {
    for (std::size_t k = 0; k < groups; ++k) {
      const auto t = group_slot_terms(topo.group(k).num_users, p[k], x[k]);
      idle[k] = t.idle;
      sole[k] = t.sole;
    }
    for (int a = 0; a < num_bs; ++a) {
      for (int b = a; b < num_bs; ++b) {
        const bs_mask heard = (bs_mask{1} << a) | (bs_mask{1} << b);
        zero_aware_product f;
        for (std::size_t k = 0; k < groups; ++k)
          if (topo.group(k).bs_set & heard) f.multiply(idle[k]);
        pair_idle[static_cast<std::size_t>(a * num_bs + b)] = f;
        pair_idle[static_cast<std::size_t>(b * num_bs + a)] = f;
      }
    }
    trace_point tp;
    if (opts.trace) {
      tp.iteration = l;
      tp.singleton.assign(groups, 0.0);
      tp.collided.assign(groups, 0.0);
    }
    for (std::size_t i = 0; i < groups; ++i) {
      if (topo.group(i).num_users == 0) continue;
      const auto st = topo.stations_of(i);
      const std::size_t n = st.size();
      pv.assign(n, 0.0);
      qm.assign(n * n, 0.0);
      // Groups other than i heard at BS a or b must all be idle.
      auto idle_product = [&](int a, int b) {
        const auto& f = pair_idle[static_cast<std::size_t>(a * num_bs + b)];
        const bool heard = (topo.group(i).bs_set & ((bs_mask{1} << a) | (bs_mask{1} << b))) != 0;
        if (!heard) return f.value();
        return f.without(idle[i]);
      };
      for (std::size_t a = 0; a < n; ++a) {
        pv[a] = sole[i] * idle_product(st[a], st[a]);
        for (std::size_t b = 0; b < n; ++b) qm[a * n + b] = a == b ? pv[a] : sole[i] * idle_product(st[a], st[b]);
      }
      const auto ub = union_lower_bound(pv, qm);
      res.singular_fallback = res.singular_fallback || ub.singular;
      w[i] = checked_probability(1.0 - ub.value, "w_i (bound)");
      if (opts.trace) tp.singleton[i] = ub.value;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < groups; ++i) {
      if (topo.group(i).num_users == 0) continue;
      const double nx = edge[i](w[i]);
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
    if (topo.group(i).num_users == 0) {
      res.w[i] = 0.0;
      continue;
    }
    res.plr[i] = checked_probability(node[i](w[i]), "p_e (bound)");
  }
  return res;
}

}  // namespace coopaloha
