#include <doctest.h>

#include <algorithm>

#include <coopaloha/error.hpp>
#include <coopaloha/optimizer.hpp>

using namespace coopaloha;

namespace {

network_topology symmetric2(std::uint64_t n = 10000) {
  return network_topology(2, {{0b01, n}, {0b10, n}, {0b11, n}}, {{0, 1}, {2}});
}

}  // namespace

TEST_CASE("single BS recovers the classic optimum") {
  optimization_spec spec(network_topology(1, {{0b1, 10000}}));
  spec.de = de_parameters::fast();
  const auto res = degree_optimizer(spec).optimize(1);
  CHECK(res.best.feasible);
  CHECK(res.class_values[0] == doctest::Approx(3.10).epsilon(0.05 / 3.1));
  CHECK(res.best.throughput == doctest::Approx(0.874).epsilon(0.01));
}

TEST_CASE("zero degree is infeasible") {
  const degree_optimizer opt(optimization_spec(network_topology(1, {{0b1, 10000}})));
  const std::vector<double> zero{0.0};
  const auto f = opt.fitness(zero);
  CHECK_FALSE(f.feasible);
  CHECK(f.score <= 0.0);
}

TEST_CASE("symmetric two-BS degrees are feasible at the reference point") {
  auto spec = optimization_spec(symmetric2());
  spec.ties = spec.topology.ties();
  const degree_optimizer opt(spec);
  const std::vector<double> ref{1.81, 1.68};
  const auto f = opt.fitness(ref);
  CHECK(f.feasible);
  CHECK(f.throughput == doctest::Approx(1.676).epsilon(0.003));
}

TEST_CASE("elitism, tie classes, reproducibility and exact re-evaluation") {
  auto spec = optimization_spec(symmetric2(2000));
  spec.ties = spec.topology.ties();
  spec.de = {16, 0.2, 6, 0.9};
  const degree_optimizer opt(spec);
  const auto a = opt.optimize(9, 1);
  const auto b = degree_optimizer(spec).optimize(9, 3);
  CHECK(a.g == b.g);
  CHECK(a.history == b.history);
  CHECK(std::is_sorted(a.history.begin(), a.history.end()));
  CHECK(a.history.size() == 7);
  CHECK(a.g[0] == a.g[1]);
  const auto again = degree_optimizer(spec).fitness_of_groups(a.g);
  CHECK(again.throughput == a.best.throughput);
  CHECK(again.slots == a.best.slots);
  for (double v : a.class_values) {
    CHECK(v >= 0.0);
    CHECK(v <= 4.0);
    CHECK(v == quantize_degree(v));
  }
}

TEST_CASE("bounds respect group sizes") {
  const network_topology t(2, {{0b01, 2}, {0b10, 0}, {0b11, 100}});
  const degree_optimizer opt(optimization_spec{t});
  CHECK(opt.class_bounds(0).second == 2.0);
  CHECK(opt.class_bounds(1).second == 0.0);
  CHECK(opt.class_bounds(2).second == 4.0);
}

TEST_CASE("invalid optimizer settings") {
  auto spec = optimization_spec(symmetric2());
  spec.alpha = 0.0;
  CHECK_THROWS_AS(degree_optimizer{spec}, config_error);
  spec.alpha = 0.8;
  spec.de.population = 3;
  CHECK_THROWS_AS(degree_optimizer{spec}, config_error);
  spec.de.population = 10;
  spec.ties = {{0}, {1}};
  CHECK_THROWS_AS(degree_optimizer{spec}, config_error);
}

TEST_CASE("quantization") {
  CHECK(quantize_degree(1.23456) == doctest::Approx(1.2346));
  CHECK(quantize_degree(0.00004) == 0.0);
}
