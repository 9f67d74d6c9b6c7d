#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include <coopaloha/error.hpp>
#include <coopaloha/walk_graph.hpp>

using namespace coopaloha;

namespace {

using S = node_state;

// Straightforward peeling written against the definition: a BS whose summed
// multiplicity is one frees its single neighbour.
std::uint32_t reference_peel(const network_topology& t, std::vector<S> states) {
  std::uint32_t peeled = 0;
  for (bool again = true; again;) {
    again = false;
    for (int j = 0; j < t.num_bs(); ++j) {
      int load = 0;
      std::size_t who = 0;
      for (auto i : t.groups_at(j)) {
        load += static_cast<int>(states[i]);
        if (states[i] != S::idle) who = i;
      }
      if (load == 1) {
        states[who] = S::idle;
        peeled |= 1U << who;
        again = true;
      }
    }
  }
  return peeled;
}

network_topology full(int m) {
  std::vector<std::uint64_t> counts((std::size_t{1} << m) - 1, 10);
  return full_topology(m, counts);
}

}  // namespace

TEST_CASE("relay through a third base station") {
  // {1} and {1,2,3} single, {2} collided: {1,2,3} is alone at BS3, which then
  // frees {1} at BS1.
  const auto t = full(3);
  const walk_graph g(t);
  std::vector<S> states(7, S::idle);
  const auto u1 = t.find_group(0b001), u2 = t.find_group(0b010), u7 = t.find_group(0b111);
  states[u1] = S::single;
  states[u2] = S::collided;
  states[u7] = S::single;
  CHECK(g.retrievable(states, u1));
  CHECK(g.retrievable(states, u7));
  CHECK_FALSE(g.initial_singleton(states, u1));
  CHECK(g.initial_singleton(states, u7));
  CHECK(g.peel(states) == ((1U << u1) | (1U << u7)));
}

TEST_CASE("peeling agrees with the reference on every M=2 pattern and random M=3 patterns") {
  const auto t2 = full(2);
  const walk_graph g2(t2);
  for (int idx = 0; idx < 27; ++idx) {
    std::vector<S> st(3);
    int v = idx;
    for (auto& s : st) {
      s = static_cast<S>(v % 3);
      v /= 3;
    }
    CHECK(g2.peel(st) == reference_peel(t2, st));
  }
  const auto t3 = full(3);
  const walk_graph g3(t3);
  std::mt19937_64 rng(3);
  for (int n = 0; n < 500; ++n) {
    std::vector<S> st(7);
    for (auto& s : st) s = static_cast<S>(rng() % 3);
    CHECK(g3.peel(st) == reference_peel(t3, st));
  }
}

TEST_CASE("pattern space encoding") {
  const pattern_space sp(5, 2);
  CHECK(sp.size() == 81);
  CHECK(sp.group_of_digit(0) == 0);
  CHECK(sp.group_of_digit(2) == 3);
  for (std::uint64_t i = 0; i < sp.size(); ++i) {
    const auto st = sp.decode(i);
    CHECK(st[2] == S::single);
    CHECK(sp.encode(st) == i);
  }
  // Least significant digit is the first non-target group.
  CHECK(sp.decode(1)[0] == S::single);
  CHECK(sp.decode(3)[1] == S::single);
}

TEST_CASE("tables are independent of the worker count and survive a save/load cycle") {
  const auto t = full(3);
  for (std::size_t target = 0; target < t.num_groups(); ++target) {
    const auto a = retrievability_table::build(t, target, 1);
    const auto b = retrievability_table::build(t, target, 3);
    CHECK(a == b);
    std::stringstream buf;
    a.save(buf);
    CHECK(retrievability_table::load(buf, t, target) == a);
  }
  const auto a = retrievability_table::build(t, 0, 1);
  std::stringstream buf;
  a.save(buf);
  const auto other = full(2);
  CHECK_THROWS(retrievability_table::load(buf, other, 0));
}

TEST_CASE("diagram evaluation equals direct enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const network_topology odd(3, {{0b001, 3}, {0b011, 2}, {0b110, 4}, {0b100, 1}, {0b111, 2}});
  for (const auto& t : {full(2), full(3), odd}) {
    const retrieval_model model(t, {});
    const walk_graph g(t);
    for (int n = 0; n < 20; ++n) {
      std::vector<double> idle(t.num_groups()), single(t.num_groups());
      for (std::size_t i = 0; i < idle.size(); ++i) {
        idle[i] = u(rng);
        single[i] = (1 - idle[i]) * u(rng);
      }
      for (std::size_t target = 0; target < t.num_groups(); ++target) {
        const auto d = model.diagram(target).evaluate(idle, single);
        const auto e = enumerate_retrieval(model.table(target), g, idle, single);
        CHECK(d.singleton == doctest::Approx(e.singleton).epsilon(1e-13));
        CHECK(d.collided == doctest::Approx(e.collided).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("diagram is small for the full three-BS network") {
  const auto t = full(3);
  const retrieval_model model(t, {});
  std::size_t nodes = 0;
  for (std::size_t i = 0; i < t.num_groups(); ++i) nodes += model.diagram(i).node_count();
  CHECK(nodes < 7 * 3 * 3 * 3);
}

TEST_CASE("guard by group count") {
  CHECK_NOTHROW(check_exact_guard(full(3), false));
  CHECK_THROWS_AS(check_exact_guard(full(4), false), guard_error);
  CHECK_NOTHROW(check_exact_guard(full(4), true));
  CHECK_THROWS_AS(check_exact_guard(full(5), true), guard_error);
  try {
    check_exact_guard(full(5), true);
  } catch (const error& e) {
    CHECK(e.kind() == error_kind::guard_refusal);
  }
}

TEST_CASE("table cache round trip on disk") {
  const auto dir = std::filesystem::temp_directory_path() / "coopaloha-cache-test";
  std::filesystem::remove_all(dir);
  const auto t = full(2);
  const retrieval_model first(t, {1, false, dir});
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 3);
  const retrieval_model second(t, {1, false, dir});
  for (std::size_t i = 0; i < 3; ++i) CHECK(first.table(i) == second.table(i));
  std::filesystem::remove_all(dir);
}

TEST_CASE("fingerprint depends on connectivity only") {
  const network_topology a(2, {{0b01, 3}, {0b11, 4}});
  const network_topology b(2, {{0b01, 30}, {0b11, 40}});
  const network_topology c(2, {{0b10, 3}, {0b11, 4}});
  CHECK(connectivity_fingerprint(a) == connectivity_fingerprint(b));
  CHECK(connectivity_fingerprint(a) != connectivity_fingerprint(c));
}
