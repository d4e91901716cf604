#include <doctest.h>

#include <cmath>
#include <map>

#include "treewalk/densities.hpp"
#include "treewalk/sampler.hpp"
#include "treewalk/walk.hpp"

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

Subset complement_of(const TreeEdgeSet& tree, int edge_count) {
  Subset out;
  std::size_t pos = 0;
  for (int id = 0; id < edge_count; ++id) {
    if (pos < tree.size() && tree[pos] == id) {
      ++pos;
    } else {
      out.push_back(id);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("init_state builds a spanning tree and the cotree") {
  WeightedGraph path = parse_graph("3 2\n0 1\n1 2");
  auto s0 = init_state(path);
  CHECK(s0.cotree_size() == 0);
  CHECK(validate_state(s0, path));

  WeightedGraph tri = triangle123();
  auto s1 = init_state(tri);
  CHECK(s1.cotree_size() == 1);
  CHECK(validate_state(s1, tri));

  WeightedGraph k4 = complete_graph(4);
  auto s2 = init_state(k4);
  CHECK(s2.cotree_size() == 3);
  CHECK(validate_state(s2, k4));
}

TEST_CASE("cographic_step preserves the state invariants") {
  WeightedGraph k4 = complete_graph(4);
  auto state = init_state(k4);
  Rng rng(123);
  for (int step = 0; step < 300; ++step) {
    cographic_step(state, k4, rng);
    if (step % 25 == 0) CHECK(validate_state(state, k4));
  }
  CHECK(validate_state(state, k4));
  CHECK(is_spanning_tree(k4, current_tree(state, k4)));
}

TEST_CASE("one step from any triangle state hits the stationary law exactly") {
  WeightedGraph tri = triangle123();  // k = 1, so a single step mixes exactly
  const double expected[3] = {2.0 / 11.0, 3.0 / 11.0, 6.0 / 11.0};  // by tree id order

  std::map<TreeEdgeSet, int> counts;
  Rng rng(777);
  const int draws = 120000;
  for (int i = 0; i < draws; ++i) {
    auto state = init_state(tri);
    cographic_step(state, tri, rng);
    ++counts[current_tree(state, tri)];
  }
  // trees listed as {0,1}, {0,2}, {1,2} with weights 2, 3, 6
  std::vector<TreeEdgeSet> trees{{0, 1}, {0, 2}, {1, 2}};
  for (std::size_t t = 0; t < 3; ++t) {
    double observed = static_cast<double>(counts[trees[t]]) / draws;
    double stderr_p = std::sqrt(expected[t] * (1 - expected[t]) / draws);
    CHECK(std::abs(observed - expected[t]) <= 3.0 * stderr_p);
  }
}

TEST_CASE("parallel edges share the cycle proportionally to inverse weight") {
  WeightedGraph doubled = parse_graph("2 2\n0 1 1\n0 1 3");
  // k = 1: one step lands on tree {0} w.p. (1/3)/(1/3 + 1) = 1/4
  Rng rng(31);
  std::map<TreeEdgeSet, int> counts;
  const int draws = 80000;
  for (int i = 0; i < draws; ++i) {
    auto state = init_state(doubled);
    cographic_step(state, doubled, rng);
    ++counts[current_tree(state, doubled)];
  }
  const double p_tree0 = 1.0 / 4.0;  // weight-1 edge as the tree
  double observed = static_cast<double>(counts[TreeEdgeSet{0}]) / draws;
  CHECK(std::abs(observed - p_tree0) <= 3.0 * std::sqrt(p_tree0 * (1 - p_tree0) / draws));
}

TEST_CASE("one-step kernel matches the complement-density transition matrix") {
  WeightedGraph k4 = complete_graph(4);
  auto density = complement_inverse_density(k4);
  auto tm = transition_matrix(*density);

  auto start = init_state(k4);
  Subset s0 = complement_of(current_tree(start, k4), k4.edge_count());
  std::size_t row = tm.index_of(s0);

  Rng rng(271828);
  const int draws = 30000;
  std::vector<int> counts(tm.support.size(), 0);
  for (int i = 0; i < draws; ++i) {
    TreeSamplerState state = start;  // copy, then take one step
    cographic_step(state, k4, rng);
    ++counts[tm.index_of(complement_of(current_tree(state, k4), k4.edge_count()))];
  }
  for (std::size_t j = 0; j < tm.support.size(); ++j) {
    double p = tm.rows[row][j];
    double observed = static_cast<double>(counts[j]) / draws;
    if (p == 0.0) {
      CHECK(counts[j] == 0);
    } else {
      CHECK(std::abs(observed - p) <= 3.0 * std::sqrt(p * (1 - p) / draws));
    }
  }
}

TEST_CASE("sample_tree contract") {
  WeightedGraph path = parse_graph("4 3\n0 1\n1 2\n2 3");
  WalkConfig config;
  Rng rng(9);
  CHECK(sample_tree(path, config, rng) == TreeEdgeSet{0, 1, 2});  // k = 0, zero steps

  WeightedGraph k4 = complete_graph(4);
  config.epsilon = 0.05;
  for (int i = 0; i < 50; ++i) {
    CHECK(is_spanning_tree(k4, sample_tree(k4, config, rng)));
  }

  // step override 0 returns the DFS start tree deterministically
  config.step_override = 0;
  auto start = init_state(k4);
  CHECK(sample_tree(k4, config, rng) == current_tree(start, k4));
}

TEST_CASE("sample_many is deterministic and valid") {
  WeightedGraph k4 = complete_graph(4);
  WalkConfig config;
  config.epsilon = 0.1;
  config.seed = 2024;

  auto a = sample_many(k4, config, 40);
  auto b = sample_many(k4, config, 40);
  CHECK(a == b);

  auto parallel = sample_many(k4, config, 40, 4);
  CHECK(parallel == a);  // chain-indexed seeding is thread-count independent

  Rng rng0 = chain_rng(config.seed, 0);
  CHECK(a[0] == sample_tree(k4, config, rng0));

  for (const auto& tree : a) CHECK(is_spanning_tree(k4, tree));
}

TEST_CASE("sampled distribution approaches the weighted tree law") {
  WeightedGraph tri = triangle123();
  WalkConfig config;
  config.epsilon = 0.02;
  config.seed = 5;
  const long long samples = 30000;
  auto trees = sample_many(tri, config, samples);

  std::map<TreeEdgeSet, double> target;
  double total = 0.0;
  for (const auto& [tree, w] : enumerate_spanning_trees(tri)) {
    target[tree] = w;
    total += w;
  }
  std::map<TreeEdgeSet, long long> counts;
  for (const auto& tree : trees) ++counts[tree];

  double tv = 0.0;
  for (const auto& [tree, w] : target) {
    tv += std::abs(static_cast<double>(counts[tree]) / samples - w / total);
  }
  tv *= 0.5;
  CHECK(tv <= config.epsilon + 3.0 * std::sqrt(3.0 / (4.0 * samples)));
}
