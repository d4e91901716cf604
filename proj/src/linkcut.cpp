#include "treewalk/linkcut.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>
#include <utility>

namespace treewalk {

DynamicForest::DynamicForest(int vertex_count) : vertex_count_(vertex_count) {
  if (vertex_count <= 0) throw Error("vertex count must be positive");
  nodes_.resize(static_cast<std::size_t>(vertex_count));
  splay_path_.reserve(64);
}

DynamicForest::EdgeInfo DynamicForest::edge_info(int edge_id) const {
  auto it = edges_.find(edge_id);
  if (it == edges_.end()) {
    throw MissingEdgeError("no edge with id " + std::to_string(edge_id));
  }
  return {it->second.u, it->second.v, it->second.weight};
}

void DynamicForest::check_vertex(int v) const {
  if (v < 0 || v >= vertex_count_) {
    throw Error("vertex index " + std::to_string(v) + " out of range");
  }
}

bool DynamicForest::is_splay_root(int x) const {
  int p = nodes_[x].parent;
  return p < 0 || (nodes_[p].child[0] != x && nodes_[p].child[1] != x);
}

int DynamicForest::dir(int x) const {
  int p = nodes_[x].parent;
  if (p < 0) return -1;
  if (nodes_[p].child[0] == x) return 0;
  if (nodes_[p].child[1] == x) return 1;
  return -1;  // path-parent pointer
}

void DynamicForest::push(int x) {
  Node& n = nodes_[x];
  if (!n.flip) return;
  std::swap(n.child[0], n.child[1]);
  if (n.child[0] >= 0) nodes_[n.child[0]].flip ^= 1;
  if (n.child[1] >= 0) nodes_[n.child[1]].flip ^= 1;
  n.flip = false;
}

void DynamicForest::pull(int x) {
  Node& n = nodes_[x];
  n.sum = n.value + sum_of(n.child[0]) + sum_of(n.child[1]);
}

void DynamicForest::attach(int p, int d, int c) {
  nodes_[p].child[d] = c;
  if (c >= 0) nodes_[c].parent = p;
}

void DynamicForest::rotate(int x) {
  int y = nodes_[x].parent;
  int z = nodes_[y].parent;
  int dx = dir(x);
  int dy = dir(y);
  attach(y, dx, nodes_[x].child[1 - dx]);
  attach(x, 1 - dx, y);
  if (dy >= 0) {
    attach(z, dy, x);
  } else {
    nodes_[x].parent = z;  // keep the path-parent pointer
  }
  pull(y);
  pull(x);
}

void DynamicForest::splay(int x) {
  // Clear pending flips from the aux-tree root down to x so every rotation
  // below acts on physically ordered nodes.
  splay_path_.clear();
  for (int y = x;; y = nodes_[y].parent) {
    splay_path_.push_back(y);
    if (is_splay_root(y)) break;
  }
  for (auto it = splay_path_.rbegin(); it != splay_path_.rend(); ++it) push(*it);

  while (dir(x) >= 0) {
    int y = nodes_[x].parent;
    if (dir(y) >= 0) rotate(dir(x) != dir(y) ? x : y);
    rotate(x);
  }
}

int DynamicForest::access(int x) {
  int last = -1;
  for (int y = x; y >= 0; y = nodes_[y].parent) {
    splay(y);
    nodes_[y].child[1] = last;  // old child keeps its path-parent pointer
    if (last >= 0) nodes_[last].parent = y;
    pull(y);
    last = y;
  }
  splay(x);
  return last;
}

void DynamicForest::make_root(int x) {
  access(x);
  nodes_[x].flip ^= 1;
  push(x);
}

bool DynamicForest::connected(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return true;
  return expose_path(u, v) >= 0;
}

// After this, the splay tree rooted at the returned node holds exactly the
// path u..v in order. Returns -1 when u and v are in different trees.
// Requires u != v.
int DynamicForest::expose_path(int u, int v) {
  make_root(u);
  access(v);
  // u is now the represented root, so it sits inside v's aux tree exactly
  // when the two are connected; only the aux root has no parent.
  if (nodes_[u].parent < 0) return -1;
  splay(u);  // leaves the follow-up make_root(u) cheap
  return u;
}

void DynamicForest::link(int u, int v, int edge_id, double weight) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw Error("cannot link a vertex to itself");
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw Error("edge weight must be positive and finite");
  }
  if (edges_.count(edge_id)) {
    throw DuplicateEdgeError("edge id " + std::to_string(edge_id) + " already present");
  }
  if (connected(u, v)) {
    throw AlreadyConnectedError("vertices " + std::to_string(u) + " and " +
                                std::to_string(v) + " are already connected");
  }

  int m = allocate_edge_node(edge_id, weight);
  nodes_[m].parent = u;
  make_root(v);
  nodes_[v].parent = m;

  edges_.emplace(edge_id, EdgeRecord{u, v, weight, m});
}

int DynamicForest::allocate_edge_node(int edge_id, double weight) {
  int m;
  if (!free_nodes_.empty()) {
    m = free_nodes_.back();
    free_nodes_.pop_back();
    nodes_[m] = Node{};
  } else {
    m = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
  }
  nodes_[m].edge_id = edge_id;
  nodes_[m].value = 1.0 / weight;
  nodes_[m].sum = nodes_[m].value;
  return m;
}

// a and b are endpoints of a tree edge (adjacent nodes in the represented
// tree); detaches them from each other.
void DynamicForest::cut_adjacent(int a, int b) {
  make_root(a);
  access(b);
  // path is exactly (a, b): b is the splay root, a its left child
  assert(nodes_[b].child[0] == a && nodes_[a].child[1] < 0);
  nodes_[b].child[0] = -1;
  nodes_[a].parent = -1;
  pull(b);
}

void DynamicForest::cut(int edge_id) {
  auto it = edges_.find(edge_id);
  if (it == edges_.end()) {
    throw MissingEdgeError("no edge with id " + std::to_string(edge_id));
  }
  EdgeRecord rec = it->second;
  cut_adjacent(rec.u, rec.node);
  cut_adjacent(rec.node, rec.v);
  nodes_[rec.node] = Node{};
  free_nodes_.push_back(rec.node);
  edges_.erase(it);
}

double DynamicForest::path_inverse_weight_sum(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return 0.0;
  int root = expose_path(u, v);
  if (root < 0) {
    throw NotConnectedError("vertices " + std::to_string(u) + " and " +
                            std::to_string(v) + " are not connected");
  }
  return nodes_[root].sum;
}

int DynamicForest::rightmost_edge_node(int x) {
  while (true) {
    push(x);
    int r = nodes_[x].child[1];
    if (r >= 0 && sum_of(r) > 0.0) {
      x = r;
    } else if (nodes_[x].value > 0.0) {
      return x;
    } else {
      x = nodes_[x].child[0];
    }
  }
}

// Prefix search for r * total over the exposed path tree; returns the chosen
// edge node, splayed to the root.
int DynamicForest::descend_to_edge(int root, double r) {
  const double total = nodes_[root].sum;
  double target = r * total;
  int x = root;
  int selected = -1;
  while (x >= 0) {
    push(x);
    double left = sum_of(nodes_[x].child[0]);
    if (target < left) {
      x = nodes_[x].child[0];
      continue;
    }
    target -= left;
    if (nodes_[x].edge_id >= 0 && target < nodes_[x].value) {
      selected = x;
      break;
    }
    target -= nodes_[x].value;
    x = nodes_[x].child[1];
  }
  if (selected < 0) {
    // r*total rounded past the final prefix; clamp to the last edge
    selected = rightmost_edge_node(root);
  }
  splay(selected);
  return selected;
}

int DynamicForest::select_path_edge(int u, int v, double r) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw Error("select_path_edge: empty path (u == v)");
  if (!(r >= 0.0 && r < 1.0)) throw Error("select_path_edge: r must lie in [0, 1)");
  int root = expose_path(u, v);
  if (root < 0) {
    throw NotConnectedError("vertices " + std::to_string(u) + " and " +
                            std::to_string(v) + " are not connected");
  }
  return nodes_[descend_to_edge(root, r)].edge_id;
}

// Removes the (splayed, aux-root) edge node and links (u, v, new_id, weight)
// in its place. Detaching an edge node splits the tree into the u side and
// the v side; everything hanging off path vertices follows its vertex.
int DynamicForest::splice_edge(int selected, int u, int v, int new_id, double weight) {
  const int removed = nodes_[selected].edge_id;
  if (new_id != removed && edges_.count(new_id)) {
    throw DuplicateEdgeError("edge id " + std::to_string(new_id) + " already present");
  }

  for (int d = 0; d < 2; ++d) {
    int c = nodes_[selected].child[d];
    if (c >= 0) {
      nodes_[c].parent = -1;
      nodes_[selected].child[d] = -1;
    }
  }
  edges_.erase(removed);
  nodes_[selected] = Node{};
  free_nodes_.push_back(selected);

  int e = allocate_edge_node(new_id, weight);
  nodes_[e].parent = u;
  make_root(v);
  nodes_[v].parent = e;
  edges_.emplace(new_id, EdgeRecord{u, v, weight, e});
  return removed;
}

int DynamicForest::swap_cycle_edge(int u, int v, double extra_inverse_weight, double r,
                                   int new_id, double weight) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw Error("swap_cycle_edge: empty path (u == v)");
  if (!(extra_inverse_weight > 0.0) || !std::isfinite(extra_inverse_weight)) {
    throw Error("swap_cycle_edge: extra mass must be positive and finite");
  }
  if (!(r >= 0.0 && r < 1.0)) throw Error("swap_cycle_edge: r must lie in [0, 1)");
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw Error("edge weight must be positive and finite");
  }
  int root = expose_path(u, v);
  if (root < 0) {
    throw NotConnectedError("vertices " + std::to_string(u) + " and " +
                            std::to_string(v) + " are not connected");
  }

  const double path_sum = nodes_[root].sum;
  const double z = extra_inverse_weight + path_sum;
  if (r < extra_inverse_weight / z) return -1;  // the virtual candidate won
  // Rescale the leftover mass onto the path; clamp away rounding spill.
  const double r_path =
      std::clamp((r * z - extra_inverse_weight) / path_sum, 0.0, 0x1.fffffffffffffp-1);
  return splice_edge(descend_to_edge(root, r_path), u, v, new_id, weight);
}

}  // namespace treewalk
