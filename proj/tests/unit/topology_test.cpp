#include <doctest.h>

#include <coopaloha/error.hpp>
#include <coopaloha/topology.hpp>

using namespace coopaloha;

TEST_CASE("groups are kept in ascending bitmask order and ties follow them") {
  network_topology t(2, {{0b11, 5}, {0b01, 7}, {0b10, 9}}, {{0}, {1, 2}});
  REQUIRE(t.num_groups() == 3);
  CHECK(t.group(0).bs_set == 0b01);
  CHECK(t.group(1).bs_set == 0b10);
  CHECK(t.group(2).bs_set == 0b11);
  CHECK(t.group(2).num_users == 5);
  REQUIRE(t.ties().size() == 2);
  CHECK(t.ties()[0] == std::vector<std::size_t>{0, 1});
  CHECK(t.ties()[1] == std::vector<std::size_t>{2});
  CHECK(t.total_users() == 21);
}

TEST_CASE("coverage, stations and per-BS groups") {
  std::vector<std::uint64_t> counts(7, 10);
  const auto t = full_topology(3, counts);
  CHECK(t.coverage(t.find_group(0b111)) == 3);
  CHECK(t.coverage(t.find_group(0b101)) == 2);
  CHECK(t.groups_at(0).size() == 4);
  const auto st = t.stations_of(t.find_group(0b110));
  CHECK(std::vector<int>(st.begin(), st.end()) == std::vector<int>{1, 2});
  CHECK(t.find_group(0b1000) == t.num_groups());
}

TEST_CASE("invalid topologies are rejected") {
  CHECK_THROWS_AS(network_topology(2, {}), config_error);
  CHECK_THROWS_AS(network_topology(2, {{0b01, 1}, {0b01, 2}}), config_error);
  CHECK_THROWS_AS(network_topology(2, {{0b100, 1}}), config_error);
  CHECK_THROWS_AS(network_topology(2, {{0, 1}}), config_error);
  CHECK_THROWS_AS(network_topology(0, {{1, 1}}), config_error);
  CHECK_THROWS_AS(network_topology(2, {{0b01, 1}, {0b10, 1}}, {{0}}), config_error);
  CHECK_THROWS_AS(network_topology(2, {{0b01, 1}, {0b10, 1}}, {{0, 1}, {1}}), config_error);
}

TEST_CASE("coverage ties") {
  std::vector<std::uint64_t> counts(7, 10);
  const auto t = full_topology(3, counts);
  const auto ties = ties_by_coverage(t);
  REQUIRE(ties.size() == 3);
  CHECK(ties[0].size() == 3);
  CHECK(ties[1].size() == 3);
  CHECK(ties[2].size() == 1);
  CHECK(effective_ties(t).size() == 7);
}

TEST_CASE("JSON round trip") {
  const char* text = R"({"num_bs": 3,
    "groups": [{"bs_set": [1, 2, 3], "num_users": 30},
               {"bs_set": [1], "num_users": 10},
               {"bs_set": [2], "num_users": 10}],
    "tie_classes": [[2, 3], [1]]})";
  const auto t = load_topology(text);
  CHECK(t.num_groups() == 3);
  CHECK(t.group(2).bs_set == 0b111);
  REQUIRE(t.ties().size() == 2);
  CHECK(t.ties()[0] == std::vector<std::size_t>{0, 1});
  const auto again = load_topology(to_config_text(t));
  CHECK(again == t);
}

TEST_CASE("JSON errors are config errors") {
  CHECK_THROWS_AS(load_topology("{"), config_error);
  CHECK_THROWS_AS(load_topology(R"({"groups": []})"), config_error);
  CHECK_THROWS_AS(load_topology(R"({"num_bs": 2, "groups": [{"bs_set": [3], "num_users": 1}]})"), config_error);
  CHECK_THROWS_AS(load_topology(R"({"num_bs": 2, "groups": [{"bs_set": [1, 1], "num_users": 1}]})"), config_error);
  CHECK_THROWS_AS(load_topology(R"({"num_bs": 2, "groups": [{"bs_set": [1], "num_users": -1}]})"), config_error);
  CHECK_THROWS_AS(load_topology(R"({"num_bs": 1, "groups": [{"bs_set": [1], "num_users": 1}], "tie_classes": "x"})"),
                  config_error);
}

TEST_CASE("by_coverage keyword") {
  const auto t = load_topology(R"({"num_bs": 2, "groups": [{"bs_set": [1], "num_users": 4},
      {"bs_set": [2], "num_users": 4}, {"bs_set": [1, 2], "num_users": 4}], "tie_classes": "by_coverage"})");
  REQUIRE(t.ties().size() == 2);
  CHECK(t.ties()[0] == std::vector<std::size_t>{0, 1});
}

TEST_CASE("transmission probabilities") {
  network_topology t(2, {{0b01, 0}, {0b10, 4}, {0b11, 10}});
  const std::vector<double> g{1.0, 2.0, 2.5};
  const auto p = transmission_probabilities(t, g);
  CHECK(p[0] == 0.0);
  CHECK(p[1] == doctest::Approx(0.5));
  CHECK(p[2] == doctest::Approx(0.25));
  const std::vector<double> too_big{0.0, 5.0, 1.0};
  CHECK_THROWS_AS(transmission_probabilities(t, too_big), config_error);
  const std::vector<double> negative{0.0, -1.0, 1.0};
  CHECK_THROWS_AS(transmission_probabilities(t, negative), config_error);
  const std::vector<double> short_g{1.0};
  CHECK_THROWS_AS(transmission_probabilities(t, short_g), config_error);
}

TEST_CASE("tie expansion") {
  const tie_classes ties{{0, 2}, {1}};
  const std::vector<double> per{1.5, 0.5};
  CHECK(expand_ties(ties, 3, per) == std::vector<double>{1.5, 0.5, 1.5});
  CHECK(describe_bs_set(0b101) == "{1,3}");
}
