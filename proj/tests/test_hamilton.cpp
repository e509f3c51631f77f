#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "hamcol/colouring.hpp"
#include "hamcol/gf2.hpp"
#include "hamcol/graph.hpp"
#include "hamcol/hamilton.hpp"
#include "hamcol/rng.hpp"
#include "hamcol/sampler.hpp"
#include "support/oracles.hpp"

using namespace hamcol;

namespace {

// outer 5-cycle, spokes, inner pentagram: the classic non-Hamiltonian
// 3-regular graph
Graph petersen() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph::from_edges(10, edges);
}

Graph random_graph(int n, int percent, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (int(rng.uniform_below(100)) < percent) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

}  // namespace

TEST_CASE("validate_cycle accepts cycles and names the first defect") {
  const Graph c5 = Graph::cycle(5);
  CHECK_FALSE(validate_cycle(c5, {0, 1, 2, 3, 4}).has_value());
  CHECK_FALSE(validate_cycle(c5, {2, 3, 4, 0, 1}).has_value());
  CHECK(validate_cycle(c5, {0, 1, 2, 3}).has_value());        // wrong length
  CHECK(validate_cycle(c5, {0, 1, 2, 3, 3}).has_value());     // repeat
  CHECK(validate_cycle(c5, {0, 1, 2, 3, 7}).has_value());     // out of range
  CHECK(validate_cycle(c5, {0, 2, 1, 3, 4}).has_value());     // non-adjacent step
  CHECK(validate_cycle(Graph::complete(2), {0, 1}).has_value());
}

TEST_CASE("exact finder solves cycles and complete graphs") {
  for (int n = 3; n <= 12; ++n) {
    INFO("n = " << n);
    const auto cyc = find_hamilton_exact(Graph::cycle(n));
    REQUIRE(cyc.has_value());
    CHECK_FALSE(validate_cycle(Graph::cycle(n), *cyc).has_value());
    const auto kn = find_hamilton_exact(Graph::complete(n));
    REQUIRE(kn.has_value());
  }
}

TEST_CASE("exact finder proves non-Hamiltonicity") {
  CHECK_FALSE(find_hamilton_exact(petersen()).has_value());
  CHECK_FALSE(find_hamilton_exact(Graph::matching(8)).has_value());
  // C_5 minus an edge is a path
  std::vector<std::pair<int, int>> path{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  CHECK_FALSE(find_hamilton_exact(Graph::from_edges(5, path)).has_value());
  CHECK_FALSE(find_hamilton_exact(Graph::complete(2)).has_value());
  CHECK_THROWS_AS(find_hamilton_exact(Graph::complete(21)), std::invalid_argument);
}

TEST_CASE("exact finder agrees with the permutation oracle") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 4 + int(seed % 5);
    const int percent = 25 + int((seed * 13) % 60);
    const Graph g = random_graph(n, percent, derive_seed(404, seed));
    INFO("seed " << seed << " n " << n << " percent " << percent);
    CHECK(find_hamilton_exact(g).has_value() == oracles::hamiltonian_oracle(g));
  }
}

TEST_CASE("rotation finder succeeds on easy instances") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto k8 = find_hamilton_rotation(Graph::complete(8), seed, 500 * 8);
    REQUIRE(k8.has_value());
    CHECK_FALSE(validate_cycle(Graph::complete(8), *k8).has_value());
  }
  // a bare cycle leaves the finder no wrong choices
  for (int n : {3, 4, 9, 32}) {
    const auto cyc = find_hamilton_rotation(Graph::cycle(n), 1, 500L * n);
    REQUIRE(cyc.has_value());
    CHECK_FALSE(validate_cycle(Graph::cycle(n), *cyc).has_value());
  }
}

TEST_CASE("rotation finder exhausts honestly on non-Hamiltonian graphs") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CHECK_FALSE(find_hamilton_rotation(petersen(), seed, 500 * 10).has_value());
    CHECK_FALSE(find_hamilton_rotation(Graph::matching(8), seed, 500 * 8).has_value());
  }
  CHECK_FALSE(find_hamilton_rotation(Graph::complete(2), 0, 100).has_value());
  CHECK_THROWS_AS(find_hamilton_rotation(Graph::complete(8), 0, 0), std::invalid_argument);
}

TEST_CASE("rotation finder is deterministic in (graph, seed, budget)") {
  const Graph g = random_graph(12, 40, 99);
  const auto a = find_hamilton_rotation(g, 7, 500 * 12);
  const auto b = find_hamilton_rotation(g, 7, 500 * 12);
  CHECK(a == b);
}

TEST_CASE("heuristic and exact finders never contradict on clean unions") {
  const std::vector<int> ns{8, 10, 12, 14, 16};
  int checked = 0;
  int non_hamiltonian = 0;
  for (std::uint64_t seed = 0; checked < 60; ++seed) {
    const int n = ns[std::size_t(seed % ns.size())];
    const int d = 2 + int(seed % 3);
    const ProperColouring c = circle_colouring(n);
    const ColourSample s = sample_colours(c, d, derive_seed(2718, seed));
    UnionResult r = build_union_graph(c, s);
    if (!std::holds_alternative<SampledGraph>(r)) continue;
    ++checked;
    const Graph& h = std::get<SampledGraph>(r).graph;
    const auto exact = find_hamilton_exact(h);
    const auto heur = find_hamilton_rotation(h, derive_seed(3141, seed), 500L * n);
    INFO("seed " << seed << " n " << n << " d " << d);
    if (heur.has_value()) CHECK(exact.has_value());
    if (!exact.has_value()) {
      CHECK_FALSE(heur.has_value());
      ++non_hamiltonian;
    }
  }
  // the d=2 stratum must exercise the non-Hamiltonian branch
  CHECK(non_hamiltonian > 0);
}

TEST_CASE("cycle colour counting on the frozen K_6 example") {
  const ProperColouring c5 = cyclic_colouring_odd(5);
  const ProperColouring e6 = extend_odd_to_even(c5);
  const std::vector<int> order{0, 1, 3, 2, 4, 5};
  const HamiltonCycle big = cycle_colour_count(e6, order);
  CHECK(big.colours == std::vector<int>{0, 1, 3, 4});
  CHECK(big.colour_count == 4);

  const HamiltonCycle reduced = close_path_to_cycle(c5, order);
  CHECK(reduced.order.size() == 5);
  CHECK_FALSE(validate_cycle(Graph::complete(5), reduced.order).has_value());
  CHECK(reduced.colours == std::vector<int>{0, 1, 4});
  CHECK(reduced.colour_count == 3);
  CHECK(reduced.colour_count <= big.colour_count + 1);
}

TEST_CASE("close_path_to_cycle over every K_6 Hamilton cycle keeps the +1 law") {
  const ProperColouring c5 = cyclic_colouring_odd(5);
  const ProperColouring e6 = extend_odd_to_even(c5);
  std::vector<int> rest{1, 2, 3, 4, 5};
  int tested = 0;
  do {
    std::vector<int> order{0};
    order.insert(order.end(), rest.begin(), rest.end());
    const HamiltonCycle big = cycle_colour_count(e6, order);
    const HamiltonCycle reduced = close_path_to_cycle(c5, order);
    CHECK(reduced.colour_count <= big.colour_count + 1);
    CHECK_FALSE(validate_cycle(Graph::complete(5), reduced.order).has_value());
    ++tested;
  } while (std::next_permutation(rest.begin(), rest.end()));
  CHECK(tested == 120);
}

TEST_CASE("close_path_to_cycle validates input") {
  const ProperColouring c5 = cyclic_colouring_odd(5);
  CHECK_THROWS_AS(close_path_to_cycle(circle_colouring(4), {0, 1, 2, 3, 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(close_path_to_cycle(c5, {0, 1, 2, 3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(close_path_to_cycle(c5, {0, 1, 2, 3, 4, 4}), std::invalid_argument);
}

TEST_CASE("cycle_colour_count validates input") {
  const ProperColouring c = circle_colouring(4);
  CHECK_THROWS_AS(cycle_colour_count(c, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(cycle_colour_count(c, {0, 1, 2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(cycle_colour_count(c, {0, 1, 2, 4}), std::invalid_argument);
}

TEST_CASE("brute-force minimum colour cycles on the frozen instances") {
  const MinColourCycle circle4 = min_colour_cycle_bruteforce(circle_colouring(4));
  CHECK(circle4.minimum == 2);
  CHECK(cycle_colour_count(circle_colouring(4), circle4.witness).colour_count == 2);

  const MinColourCycle xor2 = min_colour_cycle_bruteforce(xor_colouring(2));
  CHECK(xor2.minimum == 2);

  const MinColourCycle xor3 = min_colour_cycle_bruteforce(xor_colouring(3));
  CHECK(xor3.minimum == 3);
  CHECK(cycle_colour_count(xor_colouring(3), xor3.witness).colour_count == 3);

  const MinColourCycle cyc5 = min_colour_cycle_bruteforce(cyclic_colouring_odd(5));
  CHECK(cyc5.minimum >= 2);
  CHECK(cyc5.minimum <= 5);
  CHECK(cycle_colour_count(cyclic_colouring_odd(5), cyc5.witness).colour_count == cyc5.minimum);

  CHECK_THROWS_AS(min_colour_cycle_bruteforce(cyclic_colouring_odd(11)), std::invalid_argument);
}

TEST_CASE("span lower bound on frozen Gray-code cycles") {
  const SpanCheck g2 = verify_span_lower_bound(2, {0, 1, 3, 2});
  CHECK(g2.rank == 2);
  CHECK(g2.pass);
  const SpanCheck g3 = verify_span_lower_bound(3, {0, 1, 3, 2, 6, 7, 5, 4});
  CHECK(g3.rank == 3);
  CHECK(g3.pass);
  CHECK_THROWS_AS(verify_span_lower_bound(2, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(verify_span_lower_bound(1, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(verify_span_lower_bound(12, std::vector<int>(4096, 0)),
                  std::invalid_argument);
}

TEST_CASE("every produced cycle on an XOR colouring spans Z_2^k") {
  for (int k : {2, 3, 4}) {
    const int n = 1 << k;
    const Graph kn = Graph::complete(n);
    INFO("k = " << k);
    if (n <= 20) {
      const auto exact = find_hamilton_exact(kn);
      REQUIRE(exact.has_value());
      CHECK(verify_span_lower_bound(k, *exact).pass);
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto heur = find_hamilton_rotation(kn, seed, 500L * n);
      REQUIRE(heur.has_value());
      CHECK(verify_span_lower_bound(k, *heur).pass);
    }
  }
}

TEST_CASE("gf2 rank basics") {
  CHECK(gf2_rank({}) == 0);
  CHECK(gf2_rank({0ULL}) == 0);
  CHECK(gf2_rank({1ULL, 2ULL, 4ULL}) == 3);
  CHECK(gf2_rank({1ULL, 2ULL, 3ULL}) == 2);
  CHECK(gf2_rank({7ULL, 7ULL}) == 1);
}
