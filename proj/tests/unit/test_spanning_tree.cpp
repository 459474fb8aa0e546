#include <catch_amalgamated.hpp>

#include "malign/rng.hpp"
#include "malign/spanning_tree.hpp"

using namespace malign;
using Catch::Matchers::WithinAbs;

TEST_CASE("two vertices", "[spanning_tree]") {
  WeightedCompleteGraph g(2);
  g.set(0, 1, 0.37);
  CHECK(max_spanning_tree(g).weight == 0.37);
  CHECK(max_spanning_tree(g).edges.size() == 1);
}

TEST_CASE("constant weights", "[spanning_tree]") {
  for (std::size_t p = 2; p <= 7; ++p) {
    const SpanningTree t = max_spanning_tree(WeightedCompleteGraph::constant(p, 0.4));
    CHECK_THAT(t.weight, WithinAbs(0.4 * static_cast<double>(p - 1), 1e-12));
    CHECK(t.edges.size() == p - 1);
    // Ties go to the smallest index, so every vertex hangs off vertex 0.
    for (const auto& [from, to] : t.edges) CHECK(from == 0);
  }
}

TEST_CASE("Prim matches exhaustive enumeration", "[spanning_tree]") {
  Rng rng = seeded_rng(1);
  for (int k = 0; k < 200; ++k) {
    const auto g = WeightedCompleteGraph::uniform(5, rng);
    CHECK_THAT(max_spanning_tree(g).weight, WithinAbs(max_spanning_tree_exhaustive(g), 1e-12));
  }
}

TEST_CASE("greedy order score is maximized by the spanning tree", "[spanning_tree]") {
  Rng rng = seeded_rng(2);
  for (int k = 0; k < 50; ++k) {
    const auto g = WeightedCompleteGraph::uniform(4, rng);
    double best = 0;
    for (std::uint64_t r = 0; r < 24; ++r) best = std::max(best, greedy_order_score(g, permutation_unrank(4, r)));
    CHECK_THAT(best, WithinAbs(max_spanning_tree(g).weight / 3.0, 1e-12));
  }
}

TEST_CASE("spanning bound corners", "[spanning_tree]") {
  const SpanningBoundCheck ones = check_spanning_bound(WeightedCompleteGraph::constant(5, 1.0));
  CHECK(ones.lhs == 1.0);
  CHECK(ones.rhs == 1.0);
  CHECK(ones.ok);
  for (double x : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    WeightedCompleteGraph g(2);
    g.set(0, 1, x);
    const SpanningBoundCheck c = check_spanning_bound(g);
    CHECK_THAT(c.lhs, WithinAbs(x, 1e-15));
    CHECK_THAT(c.rhs, WithinAbs(2 * x * x / (1 + x * x), 1e-15));
    CHECK(c.ok);
  }
}

TEST_CASE("spanning bound on random matrices", "[spanning_tree]") {
  Rng rng = seeded_rng(3);
  for (std::size_t p = 3; p <= 6; ++p) {
    for (int k = 0; k < 2000; ++k) CHECK(check_spanning_bound(WeightedCompleteGraph::uniform(p, rng)).ok);
  }
}

TEST_CASE("weight validation", "[spanning_tree]") {
  CHECK_THROWS_AS(WeightedCompleteGraph({{0, 0.5}, {0.4, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedCompleteGraph({{0, 1.5}, {1.5, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedCompleteGraph({{0.1, 0.5}, {0.5, 0}}), std::invalid_argument);
  CHECK_THAT(WeightedCompleteGraph::constant(3, 0.5).mean_square(), WithinAbs(0.25, 1e-15));
}
