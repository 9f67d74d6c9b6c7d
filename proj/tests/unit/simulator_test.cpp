#include <doctest.h>

#include <cmath>

#include <coopaloha/error.hpp>
#include <coopaloha/monte_carlo.hpp>
#include <coopaloha/simulator.hpp>

#include "acceptance.hpp"

using namespace coopaloha;

TEST_CASE("decoder: relay through a shared user") {
  // BS1 hears {1} and {1,2}; BS2 hears {1,2} and {2}.
  const network_topology t(2, {{0b01, 1}, {0b10, 1}, {0b11, 1}});
  sic_decoder d(t);
  const auto a = d.first_user(0), b = d.first_user(1), c = d.first_user(2);
  const auto s0 = d.open_slot();
  d.transmit(a, s0);
  d.transmit(b, s0);
  d.transmit(c, s0);
  d.decode();
  CHECK(d.retrieved_count() == 0);
  CHECK(d.bucket_load(s0, 0) == 2);
  CHECK(d.bucket_load(s0, 1) == 2);
  const auto s1 = d.open_slot();
  d.transmit(c, s1);
  d.decode();
  // c is alone in slot 1, which frees a at BS1 and b at BS2 in slot 0.
  CHECK(d.retrieved_count() == 3);
  CHECK(d.bucket_load(s0, 0) == 0);
  CHECK(d.bucket_members(s0, 1).empty());
  CHECK(d.retrieved_per_group() == std::vector<std::uint64_t>{1, 1, 1});
}

TEST_CASE("decoder: bucket members track un-retrieved users") {
  const network_topology t(1, {{0b1, 3}});
  sic_decoder d(t);
  const auto s = d.open_slot();
  d.transmit(0, s);
  d.transmit(1, s);
  d.transmit(2, s);
  d.decode();
  CHECK(d.bucket_members(s, 0).size() == 3);
  const auto s1 = d.open_slot();
  d.transmit(1, s1);
  d.decode();
  CHECK(d.retrieved(1));
  CHECK(d.bucket_members(s, 0) == std::vector<std::uint32_t>{0, 2});
  CHECK(d.bucket_load(s, 0) == 2);
}

TEST_CASE("threshold termination") {
  const network_topology t(2, {{0b01, 500}, {0b10, 500}, {0b11, 500}});
  const std::vector<double> g{1.81, 1.81, 1.68};
  const auto f = run_frame(t, g, 0.8, 42);
  CHECK(f.terminated_by == termination::threshold);
  CHECK(f.retrieved >= 1200);
  CHECK(f.throughput == doctest::Approx(static_cast<double>(f.retrieved) / static_cast<double>(f.slots)));
  const auto again = run_frame(t, g, 0.8, 42);
  CHECK(again.slots == f.slots);
  CHECK(again.retrieved_per_group == f.retrieved_per_group);
}

TEST_CASE("slot cap and degenerate degrees") {
  const network_topology t(1, {{0b1, 100}});
  const std::vector<double> zero{0.0};
  const auto f = run_frame(t, zero, 0.8, 1);
  CHECK(f.terminated_by == termination::slot_cap);
  CHECK(f.slots == default_slot_cap(t));
  CHECK(f.retrieved == 0);
  CHECK(run_frame(t, std::vector<double>{3.0}, 0.8, 1, 7).slots <= 7);
  CHECK_THROWS(run_fixed_frame(t, std::vector<double>{1.0}, 0, 1));
}

TEST_CASE("fixed frames: PLR never below the silent-user floor on average") {
  const network_topology t(2, {{0b01, 300}, {0b10, 300}, {0b11, 300}});
  const std::vector<double> g{1.8, 1.8, 1.7};
  for (std::uint64_t slots : {200ULL, 400ULL, 700ULL}) {
    simulation_spec spec(t, frame_kind::frameless_fixed, g);
    spec.slots = slots;
    const auto s = monte_carlo(spec, 60, 3, 1);
    CHECK(s.plr.mean >= silent_user_floor(t, g, slots) - 3 * s.plr.std_error);
  }
}

TEST_CASE("simulator matches exhaustive enumeration on a tiny network") {
  const network_topology t(2, {{0b01, 2}, {0b10, 2}, {0b11, 2}});
  const std::vector<double> g{1.0, 1.0, 1.0};
  const std::size_t trials = 20000;
  for (std::uint64_t slots : {1ULL, 2ULL, 3ULL}) {
    const auto exact = coopaloha::cli::exhaustive_retrieval_distribution(t, g, slots);
    double total = 0;
    for (double v : exact) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    simulation_spec spec(t, frame_kind::frameless_fixed, g);
    spec.slots = slots;
    const auto s = monte_carlo(spec, trials, 9, 1);
    std::vector<double> freq(exact.size(), 0.0);
    for (const auto& r : s.records) freq[r.frame.retrieved] += 1.0 / trials;
    for (std::size_t k = 0; k < exact.size(); ++k) {
      const double sd = std::sqrt(exact[k] * (1 - exact[k]) / trials);
      CHECK(std::abs(freq[k] - exact[k]) <= 4 * sd + 1e-12);
    }
  }
}

TEST_CASE("spatio-temporal frames send exactly s replicas") {
  const network_topology t(1, {{0b1, 1}});
  const auto lambda = parse_replica_distribution("2:1");
  // One user with two replicas in two slots is always retrieved.
  for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(run_spatio_temporal(t, lambda, 2, seed).retrieved == 1);
  const auto three = parse_replica_distribution("3:1");
  CHECK_THROWS(run_spatio_temporal(t, three, 2, 1));
}

TEST_CASE("replica distribution parsing") {
  const auto a = parse_replica_distribution(R"({"2": 0.5, "3": 0.5})");
  CHECK(a.max_degree() == 3);
  CHECK(a.mass[2] == doctest::Approx(0.5));
  const auto b = parse_replica_distribution("1:0.25,4:0.75");
  CHECK(b.max_degree() == 4);
  CHECK_THROWS_AS(parse_replica_distribution("2:0.5"), config_error);
  CHECK_THROWS_AS(parse_replica_distribution("0:1"), config_error);
  CHECK_THROWS_AS(parse_replica_distribution("{bad"), config_error);
}

TEST_CASE("normalized load") {
  const network_topology t(3, {{0b001, 1000}, {0b010, 1000}, {0b111, 1000}});
  CHECK(normalized_load(t, 1000) == doctest::Approx(1.0));
  CHECK(slots_for_load(t, 0.5) == 2000);
}

TEST_CASE("Monte Carlo is independent of the worker count") {
  const network_topology t(2, {{0b01, 200}, {0b10, 200}, {0b11, 200}});
  simulation_spec spec(t, frame_kind::frameless, {1.81, 1.81, 1.68});
  const auto a = monte_carlo(spec, 12, 77, 1);
  const auto b = monte_carlo(spec, 12, 77, 4);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    CHECK(a.records[k].seed == b.records[k].seed);
    CHECK(a.records[k].frame.slots == b.records[k].frame.slots);
    CHECK(a.records[k].frame.retrieved_per_group == b.records[k].frame.retrieved_per_group);
  }
  CHECK(a.throughput.mean == b.throughput.mean);
}
