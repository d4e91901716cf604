#include <doctest.h>

#include <algorithm>
#include <set>

#include "treewalk/graph.hpp"
#include "treewalk/rng.hpp"

using namespace treewalk;

namespace {

WeightedGraph triangle123() {
  return parse_graph("3 3\n0 1 1\n1 2 2\n0 2 3\n");
}

WeightedGraph complete_graph(int n) {
  std::vector<GraphEdge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back(GraphEdge{u, v, 1.0});
  }
  return WeightedGraph(n, std::move(edges));
}

}  // namespace

TEST_CASE("parse_graph accepts the documented format") {
  WeightedGraph tri = parse_graph("3 3\n0 1\n1 2\n0 2");
  CHECK(tri.vertex_count() == 3);
  CHECK(tri.edge_count() == 3);
  for (const auto& e : tri.edges()) CHECK(e.weight == 1.0);

  WeightedGraph single = parse_graph("2 1\n0 1 2.5");
  CHECK(single.edge_count() == 1);
  CHECK(single.edge(0).weight == 2.5);

  WeightedGraph commented = parse_graph("# header comment\n2 1\n\n# edge below\n0 1\n");
  CHECK(commented.edge_count() == 1);
}

TEST_CASE("parse_graph rejects bad input with distinct errors") {
  CHECK_THROWS_AS(parse_graph("4 2\n0 1\n2 3"), DisconnectedGraphError);
  CHECK_THROWS_AS(parse_graph("2 1\n0 0"), SelfLoopError);
  CHECK_THROWS_AS(parse_graph("2 1\n0 1 -2"), NonpositiveWeightError);
  CHECK_THROWS_AS(parse_graph("2 1\n0 1 0"), NonpositiveWeightError);
  CHECK_THROWS_AS(parse_graph("2 1\n0 x"), MalformedLineError);
  CHECK_THROWS_AS(parse_graph("2 2\n0 1"), MalformedLineError);
  CHECK_THROWS_AS(parse_graph("2 1\n0 1\n0 1"), MalformedLineError);
  CHECK_THROWS_AS(parse_graph(""), MalformedLineError);
  CHECK_THROWS_AS(parse_graph("2 1\n0 5"), MalformedLineError);
}

TEST_CASE("parse / format round trip") {
  WeightedGraph g = parse_graph("4 5\n0 1 0.25\n1 2\n2 3 7\n0 2\n1 3 2.5\n");
  WeightedGraph h = parse_graph(format_graph(g));
  REQUIRE(h.vertex_count() == g.vertex_count());
  REQUIRE(h.edge_count() == g.edge_count());
  for (int id = 0; id < g.edge_count(); ++id) {
    CHECK(h.edge(id).u == g.edge(id).u);
    CHECK(h.edge(id).v == g.edge(id).v);
    CHECK(h.edge(id).weight == g.edge(id).weight);
  }
}

TEST_CASE("weighted_tree_total on known graphs") {
  CHECK(weighted_tree_total(triangle123()) == doctest::Approx(11.0).epsilon(1e-12));
  CHECK(weighted_tree_total(complete_graph(4)) == doctest::Approx(16.0).epsilon(1e-12));
  // path on 3 vertices has a unique tree of weight 1
  CHECK(weighted_tree_total(parse_graph("3 2\n0 1\n1 2")) == doctest::Approx(1.0));
  CHECK(weighted_tree_total(complete_graph(5)) == doctest::Approx(125.0).epsilon(1e-12));
}

TEST_CASE("enumerate_spanning_trees on known graphs") {
  auto tri = enumerate_spanning_trees(triangle123());
  REQUIRE(tri.size() == 3);
  std::multiset<double> weights;
  for (const auto& [tree, w] : tri) weights.insert(w);
  CHECK(weights == std::multiset<double>{2.0, 3.0, 6.0});

  auto k4 = enumerate_spanning_trees(complete_graph(4));
  CHECK(k4.size() == 16);
  for (const auto& [tree, w] : k4) CHECK(w == 1.0);

  auto single = enumerate_spanning_trees(parse_graph("2 1\n0 1 4"));
  REQUIRE(single.size() == 1);
  CHECK(single[0].second == 4.0);
}

TEST_CASE("enumeration respects the edge cap") {
  CHECK_THROWS_AS(enumerate_spanning_trees(complete_graph(4), 5), EnumerationCapError);
}

TEST_CASE("is_spanning_tree") {
  WeightedGraph tri = triangle123();
  CHECK(is_spanning_tree(tri, {0, 1}));
  CHECK_FALSE(is_spanning_tree(tri, {0, 1, 2}));

  WeightedGraph k4 = complete_graph(4);
  // edges 0=(0,1), 1=(0,2), 3=(1,2) form a triangle missing vertex 3
  CHECK_FALSE(is_spanning_tree(k4, {0, 1, 3}));
  CHECK(is_spanning_tree(k4, {0, 1, 2}));  // star at vertex 0
}

TEST_CASE("enumeration agrees with the matrix-tree total on random graphs") {
  Rng rng(20240817);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 3 + static_cast<int>(uniform_index(rng, 4));  // 3..6 vertices
    std::vector<GraphEdge> edges;
    for (int v = 1; v < n; ++v) {
      int u = static_cast<int>(uniform_index(rng, v));
      edges.push_back(GraphEdge{u, v, 0.25 + 2.0 * uniform01(rng)});
    }
    int extra = static_cast<int>(uniform_index(rng, 5));
    while (extra-- > 0) {
      int u = static_cast<int>(uniform_index(rng, n));
      int v = static_cast<int>(uniform_index(rng, n));
      if (u == v) continue;
      edges.push_back(GraphEdge{u, v, 0.25 + 2.0 * uniform01(rng)});
    }
    WeightedGraph g(n, edges);

    auto trees = enumerate_spanning_trees(g);
    double sum = 0.0;
    std::set<TreeEdgeSet> distinct;
    for (const auto& [tree, w] : trees) {
      CHECK(is_spanning_tree(g, tree));
      double direct = 1.0;
      for (int id : tree) direct *= g.edge(id).weight;
      CHECK(w == doctest::Approx(direct).epsilon(1e-12));
      sum += w;
      distinct.insert(tree);
    }
    CHECK(distinct.size() == trees.size());  // no duplicates
    CHECK(sum == doctest::Approx(weighted_tree_total(g)).epsilon(1e-9));
  }
}
