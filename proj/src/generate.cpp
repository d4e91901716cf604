#include "treewalk/generate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <utility>

#include "treewalk/rng.hpp"
#include "treewalk/sampler.hpp"

namespace treewalk {

namespace {

void append_random_cycle(std::vector<GraphEdge>& edges, int vertices, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(vertices));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[uniform_index(rng, i + 1)]);
  }
  for (int i = 0; i < vertices; ++i) {
    edges.push_back(GraphEdge{order[static_cast<std::size_t>(i)],
                              order[static_cast<std::size_t>((i + 1) % vertices)], 1.0});
  }
}

}  // namespace

WeightedGraph random_regular_graph(int edge_count, std::uint64_t seed) {
  if (edge_count < 3) throw Error("random_regular_graph: need at least 3 edges");
  const int vertices = std::max(3, edge_count / 2);
  Rng rng = chain_rng(seed, 0x6e);

  std::vector<GraphEdge> edges;
  edges.reserve(static_cast<std::size_t>(edge_count));
  append_random_cycle(edges, vertices, rng);  // guarantees connectivity
  append_random_cycle(edges, vertices, rng);
  while (std::cmp_less(edges.size(), edge_count)) {
    int u = static_cast<int>(uniform_index(rng, vertices));
    int v = static_cast<int>(uniform_index(rng, vertices));
    if (u == v) continue;
    edges.push_back(GraphEdge{u, v, 1.0});
  }
  edges.resize(static_cast<std::size_t>(edge_count));
  return WeightedGraph(vertices, std::move(edges));
}

WeightedGraph grid_graph(int edge_count) {
  if (edge_count < 4) throw Error("grid_graph: need at least 4 edges");
  // an s x s grid has 2s(s-1) edges
  int side = std::max(2, static_cast<int>(std::lround(std::sqrt(edge_count / 2.0))));
  auto at = [side](int row, int col) { return row * side + col; };
  std::vector<GraphEdge> edges;
  for (int row = 0; row < side; ++row) {
    for (int col = 0; col < side; ++col) {
      if (col + 1 < side) edges.push_back(GraphEdge{at(row, col), at(row, col + 1), 1.0});
      if (row + 1 < side) edges.push_back(GraphEdge{at(row, col), at(row + 1, col), 1.0});
    }
  }
  return WeightedGraph(side * side, std::move(edges));
}

std::vector<BenchRow> run_bench(const std::vector<int>& sizes, double epsilon,
                                double schedule_constant, const std::string& family,
                                std::uint64_t seed) {
  std::vector<BenchRow> rows;
  for (int size : sizes) {
    WeightedGraph g = family == "grid" ? grid_graph(size) : random_regular_graph(size, seed);
    BenchRow row;
    row.n_edges = g.edge_count();
    row.vertices = g.vertex_count();
    const int k = g.cotree_size();
    row.steps = k == 0 ? 0 : mixing_steps(k, epsilon, schedule_constant);

    WalkConfig config;
    config.epsilon = epsilon;
    config.schedule_constant = schedule_constant;
    config.seed = seed;
    Rng rng = chain_rng(seed, 0xb00);

    auto start = std::chrono::steady_clock::now();
    TreeEdgeSet tree = sample_tree(g, config, rng);
    auto stop = std::chrono::steady_clock::now();
    if (!is_spanning_tree(g, tree)) throw Error("bench produced a non-tree");

    row.wall_seconds = std::chrono::duration<double>(stop - start).count();
    row.seconds_per_step = row.steps > 0 ? row.wall_seconds / static_cast<double>(row.steps) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace treewalk
