#include <doctest.h>

#include <cmath>
#include <random>

#include <coopaloha/closed_form.hpp>
#include <coopaloha/degrees.hpp>
#include <coopaloha/error.hpp>
#include <coopaloha/evolution.hpp>
#include <coopaloha/peak_search.hpp>

using namespace coopaloha;

namespace {

network_topology full(int m, std::uint64_t n = 10000) {
  std::vector<std::uint64_t> counts((std::size_t{1} << m) - 1, n);
  return full_topology(m, counts);
}

std::vector<double> by_coverage(const network_topology& t, std::vector<double> per) {
  std::vector<double> g(t.num_groups());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = per[t.coverage(i) - 1];
  return g;
}

}  // namespace

TEST_CASE("slot terms are the idle and single probabilities of a binomial") {
  for (std::uint64_t n : {1ULL, 3ULL, 50ULL}) {
    for (double q : {0.02, 0.3}) {
      for (double x : {0.1, 0.9, 1.0}) {
        const auto st = group_slot_terms(n, q, x);
        const auto active = binomial_distribution(n, q * x);
        CHECK(st.idle == doctest::Approx(active[0]).epsilon(1e-12));
        CHECK(st.single == doctest::Approx(active[1]).epsilon(1e-12));
        CHECK(st.sole == doctest::Approx(std::pow(1 - q * x, static_cast<double>(n - 1))).epsilon(1e-12));
      }
    }
  }
  const auto empty = group_slot_terms(0, 0.0, 0.5);
  CHECK(empty.idle == 1.0);
  CHECK(empty.single == 0.0);
  CHECK(empty.sole == 1.0);
}

TEST_CASE("single BS: cooperation and independent decoding coincide") {
  const network_topology t(1, {{0b1, 10000}});
  const std::vector<double> g{3.1};
  const analyzer co(t, analysis_mode::coop, {});
  const analyzer nc(t, analysis_mode::noncoop, {});
  for (std::uint64_t slots : {9000ULL, 11000ULL, 14000ULL}) {
    const auto a = co.evolve(g, slots);
    const auto b = nc.evolve(g, slots);
    CHECK(a.converged);
    CHECK(a.plr[0] == doctest::Approx(b.plr[0]).epsilon(1e-9));
  }
  CHECK(find_peak(co, g).throughput == doctest::Approx(0.8745).epsilon(0.001));
}

TEST_CASE("disjoint cells behave like separate single-BS networks") {
  const network_topology two(2, {{0b01, 5000}, {0b10, 8000}});
  const network_topology one_a(1, {{0b1, 5000}});
  const network_topology one_b(1, {{0b1, 8000}});
  const std::vector<double> g{2.0, 3.0};
  const analyzer co(two, analysis_mode::coop, {});
  const auto r = co.evolve(g, 6000);
  const std::vector<double> ga{2.0}, gb{3.0};
  CHECK(r.plr[0] == doctest::Approx(analyzer(one_a, analysis_mode::coop, {}).evolve(ga, 6000).plr[0]));
  CHECK(r.plr[1] == doctest::Approx(analyzer(one_b, analysis_mode::coop, {}).evolve(gb, 6000).plr[0]));
}

TEST_CASE("symmetric reference degrees give the expected peaks") {
  const auto t2 = full(2);
  const analyzer a2(t2, analysis_mode::coop, {});
  CHECK(find_peak(a2, by_coverage(t2, {1.81, 1.68})).throughput == doctest::Approx(1.676).epsilon(0.003));
  const auto t3 = full(3);
  const analyzer a3(t3, analysis_mode::coop, {});
  CHECK(find_peak(a3, by_coverage(t3, {1.11, 0.94, 0.78})).throughput == doctest::Approx(2.366).epsilon(0.002));
}

TEST_CASE("closed forms match the diagrams at random probes") {
  const auto t = full(3, 10);
  const retrieval_model model(t, {});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 50; ++n) {
    m3_probes probes;
    std::vector<double> idle(7), single(7);
    for (std::size_t i = 0; i < 7; ++i) {
      idle[i] = u(rng);
      single[i] = (1 - idle[i]) * u(rng);
      const auto label = static_cast<std::size_t>(m3_label_of(t.group(i).bs_set));
      probes.idle[label] = idle[i];
      probes.single[label] = single[i];
    }
    probes.sole = u(rng);
    for (int label = 1; label <= 7; ++label) {
      const auto target = t.find_group(m3_label_set(label));
      const double w = 1 - probes.sole * model.diagram(target).evaluate(idle, single).total();
      CHECK(std::abs(closed_form_w_m3(probes, label) - w) < 1e-12);
    }
  }
  CHECK_THROWS_AS(closed_form_w_m3(m3_probes{}, 8), config_error);
  CHECK(m3_label_of(0b011) == 4);
  CHECK(m3_label_of(0b101) == 6);
}

TEST_CASE("x iterates decrease and stay in [0, 1]") {
  const auto t = full(3);
  const auto g = by_coverage(t, {1.11, 0.94, 0.78});
  const analyzer co(t, analysis_mode::coop, {});
  std::vector<double> prev(7, 1.0);
  for (int l = 1; l <= 40; ++l) {
    evolution_options e;
    e.max_iter = l;
    e.tol = 0;
    const auto r = co.evolve(g, 25000, e);
    for (std::size_t i = 0; i < 7; ++i) {
      CHECK(r.x[i] <= prev[i] + 1e-12);
      CHECK(r.x[i] >= 0.0);
    }
    prev = r.x;
  }
}

TEST_CASE("trace: the singleton part dominates at convergence") {
  const auto t = full(2);
  const auto g = by_coverage(t, {1.81, 1.68});
  const analyzer co(t, analysis_mode::coop, {});
  evolution_options e;
  e.trace = true;
  const auto r = co.evolve(g, 16069, e);
  REQUIRE(r.converged);
  REQUIRE(static_cast<int>(r.trace.size()) == r.iterations);
  const auto& last = r.trace.back();
  for (std::size_t i = 0; i < 3; ++i) CHECK(last.singleton[i] > last.collided[i]);
}

TEST_CASE("independent decoding with overlapping coverage treats BS views as independent") {
  // A single group heard by two BSs: both BSs see identical slots, so joint
  // decoding equals single-BS decoding, while the product over BSs counts the
  // same miss twice and reports a smaller loss.
  const network_topology t(2, {{0b01, 0}, {0b10, 0}, {0b11, 10000}});
  const std::vector<double> g{0.0, 0.0, 3.098};
  const auto co = analyzer(t, analysis_mode::coop, {}).evolve(g, 10615);
  const auto nc = analyzer(t, analysis_mode::noncoop, {}).evolve(g, 10615);
  const network_topology single(1, {{0b1, 10000}});
  const std::vector<double> g1{3.098};
  const auto one = analyzer(single, analysis_mode::coop, {}).evolve(g1, 10615);
  CHECK(co.plr[2] == doctest::Approx(one.plr[0]).epsilon(1e-9));
  CHECK(nc.plr[2] < co.plr[2]);
}

TEST_CASE("throughput and average PLR") {
  const network_topology t(2, {{0b01, 100}, {0b10, 300}});
  const std::vector<double> plr{0.1, 0.2};
  CHECK(average_plr(t, plr) == doctest::Approx((100 * 0.1 + 300 * 0.2) / 400));
  CHECK(throughput(t, plr, 100) == doctest::Approx((90.0 + 240.0) / 100));
  CHECK(parse_analysis_mode("noncoop") == analysis_mode::noncoop);
  CHECK_THROWS_AS(parse_analysis_mode("other"), config_error);
}

TEST_CASE("exact analysis refuses large networks") {
  CHECK_THROWS_AS(analyzer(full(4), analysis_mode::coop, {}), guard_error);
  CHECK_NOTHROW(analyzer(full(4), analysis_mode::noncoop, {}));
  CHECK_NOTHROW(analyzer(full(6, 100), analysis_mode::bound, {}));
}
