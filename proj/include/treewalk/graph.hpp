#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treewalk/error.hpp"

namespace treewalk {

// parse_graph failure modes, one type each so callers can tell them apart
struct MalformedLineError : Error {
  using Error::Error;
};
struct SelfLoopError : Error {
  using Error::Error;
};
struct NonpositiveWeightError : Error {
  using Error::Error;
};
struct DisconnectedGraphError : Error {
  using Error::Error;
};

struct GraphEdge {
  int u = 0;
  int v = 0;
  double weight = 1.0;
};

/// Connected multigraph with positive edge weights. Edge ids are positions
/// in `edges`. Immutable after construction; safe to share across threads.
class WeightedGraph {
 public:
  WeightedGraph(int vertex_count, std::vector<GraphEdge> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const GraphEdge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  /// Rank of the cographic matroid: |E| - |V| + 1.
  int cotree_size() const { return edge_count() - vertex_count_ + 1; }

 private:
  int vertex_count_;
  std::vector<GraphEdge> edges_;
};

using TreeEdgeSet = std::vector<int>;  // sorted edge ids, |V|-1 of them

/// Parses the edge-list format: header "<vertex_count> <edge_count>", then
/// one "u v [w]" line per edge (0-based, weight defaults to 1.0). Lines
/// starting with '#' and blank lines are skipped.
WeightedGraph parse_graph(std::string_view text);

WeightedGraph load_graph_file(const std::string& path);

/// Inverse of parse_graph up to comments and formatting.
std::string format_graph(const WeightedGraph& g);

/// Sum over spanning trees T of prod_{e in T} w_e, via a cofactor of the
/// weighted Laplacian. Intended for verification; |V| up to ~10^3.
double weighted_tree_total(const WeightedGraph& g);

/// All spanning trees with their weight products. Brute force over
/// (|V|-1)-subsets of edges; refuses graphs with more than `edge_cap` edges.
std::vector<std::pair<TreeEdgeSet, double>> enumerate_spanning_trees(
    const WeightedGraph& g, int edge_cap = 24);

bool is_spanning_tree(const WeightedGraph& g, const std::vector<int>& edge_ids);

}  // namespace treewalk
