#include <doctest.h>

#include <coopaloha/error.hpp>
#include <coopaloha/peak_search.hpp>

using namespace coopaloha;

TEST_CASE("default slot range") {
  std::vector<std::uint64_t> counts(3, 10000);
  const auto t = full_topology(2, counts);
  const auto r = default_slot_range(t);
  // ceil(0.5 * 30000 / (2 * 0.87)) and ceil(2 * 30000 / 2).
  CHECK(r.min == 8621);
  CHECK(r.max == 30000);
}

TEST_CASE("peak search finds the best integer slot count") {
  const network_topology t(1, {{0b1, 2000}});
  const std::vector<double> g{3.1};
  const analyzer an(t, analysis_mode::coop, {});
  const auto pk = find_peak(an, g);
  REQUIRE(pk.converged);
  for (auto d : {-3, -1, 1, 3}) {
    const auto slots = static_cast<std::uint64_t>(static_cast<long long>(pk.slots) + d);
    CHECK(throughput(t, an.evolve(g, slots).plr, slots) <= pk.throughput + 1e-12);
  }
  CHECK(pk.plr_avg == doctest::Approx(average_plr(t, pk.plr)));
}

TEST_CASE("peak search widens the range when the maximum sits on an edge") {
  const network_topology t(1, {{0b1, 10000}});
  const std::vector<double> g{3.1};
  const analyzer an(t, analysis_mode::coop, {});
  peak_options opts;
  opts.range = {2000, 4000};
  const auto pk = find_peak(an, g, opts);
  CHECK(pk.slots > 4000);
  CHECK(pk.throughput == doctest::Approx(0.8745).epsilon(0.002));
}

TEST_CASE("curve over a grid") {
  const network_topology t(1, {{0b1, 1000}});
  const std::vector<double> g{3.1};
  const analyzer an(t, analysis_mode::coop, {});
  const std::vector<std::uint64_t> grid{800, 1000, 1100, 1300};
  const auto c = compute_plr_curve(an, g, grid);
  REQUIRE(c.points.size() == 4);
  for (std::size_t k = 1; k < 4; ++k) CHECK(c.points[k].plr_avg <= c.points[k - 1].plr_avg);
  for (const auto& p : c.points) CHECK(c.points[c.peak].throughput >= p.throughput);
  const std::vector<std::uint64_t> bad{5, 5};
  CHECK_THROWS_AS(compute_plr_curve(an, g, bad), config_error);
}

TEST_CASE("diversity gain") {
  CHECK(diversity_gain(1.5, 1.2) == doctest::Approx(1.25));
  CHECK_THROWS(diversity_gain(1.0, 0.0));
}
