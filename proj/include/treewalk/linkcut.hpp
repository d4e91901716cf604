#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "treewalk/error.hpp"

namespace treewalk {

struct AlreadyConnectedError : Error {
  using Error::Error;
};
struct DuplicateEdgeError : Error {
  using Error::Error;
};
struct MissingEdgeError : Error {
  using Error::Error;
};
struct NotConnectedError : Error {
  using Error::Error;
};

/*
 * Link-cut forest over a fixed vertex set, with per-edge weights and
 * inverse-weight path aggregates.
 *
 * Every present edge is materialized as its own splay node sitting between
 * its endpoints (edge subdivision), carrying value 1/weight; vertex nodes
 * carry 0. A path query therefore reads the plain subtree sum of the
 * preferred-path splay tree, and select_path_edge is a prefix search down
 * that tree. All operations are amortized O(log vertex_count).
 *
 * Queries splay internally, so even read-style calls are non-const and a
 * forest must not be shared across threads while in use.
 */
class DynamicForest {
 public:
  explicit DynamicForest(int vertex_count);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  struct EdgeInfo {
    int u;
    int v;
    double weight;
  };

  bool has_edge(int edge_id) const { return edges_.count(edge_id) > 0; }
  EdgeInfo edge_info(int edge_id) const;

  /// Adds edge (u, v). Throws AlreadyConnectedError if u and v are already
  /// in the same tree, DuplicateEdgeError if the id is in use.
  void link(int u, int v, int edge_id, double weight);

  /// Removes the edge; its endpoints end up in separate trees.
  void cut(int edge_id);

  bool connected(int u, int v);

  /// Sum of 1/weight over the tree path u..v; 0 when u == v.
  double path_inverse_weight_sum(int u, int v);

  /// Deterministic in r: with S the path inverse-weight sum and prefixes
  /// accumulated from u toward v, returns the edge whose half-open interval
  /// [before/S, after/S) contains r. r exactly on a boundary selects the
  /// next edge.
  int select_path_edge(int u, int v, double r);

  /// One-exposure cycle update for walk steps. Treats a virtual candidate of
  /// mass `extra_inverse_weight` as prefix position zero ahead of the path
  /// edges: with Z = extra + path sum, r < extra/Z keeps the forest unchanged
  /// and returns -1; otherwise the draw is rescaled onto the path, the edge
  /// select_path_edge would pick is removed, (u, v, new_id, weight) is linked
  /// in its place, and the removed id is returned. Equivalent to path sum +
  /// select + cut + link, but exposes the path once.
  int swap_cycle_edge(int u, int v, double extra_inverse_weight, double r,
                      int new_id, double weight);

 private:
  struct Node {
    int parent = -1;
    int child[2] = {-1, -1};
    bool flip = false;
    int edge_id = -1;   // -1 for vertex nodes
    double value = 0.0; // 1/weight for edge nodes
    double sum = 0.0;
  };

  struct EdgeRecord {
    int u;
    int v;
    double weight;
    int node;
  };

  double sum_of(int x) const { return x < 0 ? 0.0 : nodes_[x].sum; }
  bool is_splay_root(int x) const;
  int dir(int x) const;
  void push(int x);
  void pull(int x);
  void attach(int p, int d, int c);
  void rotate(int x);
  void splay(int x);
  int access(int x);
  void make_root(int x);
  void cut_adjacent(int a, int b);
  int expose_path(int u, int v);  // make_root(u) + access(v); returns path root or -1
  int rightmost_edge_node(int x);
  int descend_to_edge(int root, double r);
  int splice_edge(int selected, int u, int v, int new_id, double weight);
  int allocate_edge_node(int edge_id, double weight);
  void check_vertex(int v) const;

  int vertex_count_;
  std::vector<Node> nodes_;
  std::vector<int> free_nodes_;
  std::unordered_map<int, EdgeRecord> edges_;
  std::vector<int> splay_path_;  // scratch for splay's top-down push pass
};

}  // namespace treewalk
