#include <doctest.h>

#include <cmath>

#include <coopaloha/degrees.hpp>
#include <coopaloha/error.hpp>

using namespace coopaloha;

namespace {

double choose(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

TEST_CASE("binomial mass matches the direct formula") {
  for (int n : {1, 2, 5, 12}) {
    for (double p : {0.0, 0.1, 0.5, 0.93, 1.0}) {
      const auto d = binomial_distribution(static_cast<std::uint64_t>(n), p);
      for (int k = 0; k <= n; ++k)
        CHECK(d[static_cast<std::size_t>(k)] ==
              doctest::Approx(choose(n, k) * std::pow(p, k) * std::pow(1 - p, n - k)).epsilon(1e-12));
      CHECK(d.sum() == doctest::Approx(1.0));
      CHECK(d.mean() == doctest::Approx(n * p).epsilon(1e-9));
    }
  }
}

TEST_CASE("binomial tends to Poisson") {
  const double lambda = 3.1;
  const auto d = binomial_distribution(1000000, lambda / 1e6);
  double fact = 1.0;
  for (int k = 0; k < 12; ++k) {
    if (k > 0) fact *= k;
    CHECK(d[static_cast<std::size_t>(k)] == doctest::Approx(std::exp(-lambda) * std::pow(lambda, k) / fact).epsilon(1e-4));
  }
}

TEST_CASE("closed-form generating function agrees with the polynomial") {
  for (std::uint64_t n : {1ULL, 7ULL, 40ULL}) {
    for (double p : {0.05, 0.4}) {
      const binomial_law law{n, p};
      const auto poly = binomial_distribution(n, p);
      const auto edge = edge_perspective(poly);
      for (double x : {0.0, 0.3, 0.77, 1.0}) {
        CHECK(law(x) == doctest::Approx(eval(poly, x)).epsilon(1e-10));
        CHECK(law.edge()(x) == doctest::Approx(eval(edge, x)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("node distributions") {
  const auto l = variable_node_dist(4, 0.25);
  CHECK(l.size() == 5);
  CHECK(l[0] == doctest::Approx(std::pow(0.75, 4)));
  const auto r = observation_node_dist(0, 0.3);
  CHECK(r.size() == 1);
  CHECK(r[0] == 1.0);
  CHECK_THROWS(edge_perspective(degree_polynomial({1.0})));
  CHECK(binomial_law{0, 0.5}(0.2) == 1.0);
}
