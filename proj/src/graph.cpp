#include "treewalk/graph.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace treewalk {

namespace {

// Union-find over vertices, array-based with path halving.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns false if x and y were already in the same component.
  bool unite(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return false;
    parent_[rx] = ry;
    return true;
  }

 private:
  std::vector<int> parent_;
};

void check_connected(int vertex_count, const std::vector<GraphEdge>& edges) {
  UnionFind uf(vertex_count);
  int components = vertex_count;
  for (const auto& e : edges) {
    if (uf.unite(e.u, e.v)) --components;
  }
  if (components != 1) {
    throw DisconnectedGraphError("graph is disconnected (" +
                                 std::to_string(components) + " components)");
  }
}

}  // namespace

WeightedGraph::WeightedGraph(int vertex_count, std::vector<GraphEdge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ <= 0) {
    throw MalformedLineError("vertex count must be positive");
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.u < 0 || e.u >= vertex_count_ || e.v < 0 || e.v >= vertex_count_) {
      throw MalformedLineError("edge " + std::to_string(i) +
                               " has vertex index out of range");
    }
    if (e.u == e.v) {
      throw SelfLoopError("edge " + std::to_string(i) + " is a self-loop at vertex " +
                          std::to_string(e.u));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw NonpositiveWeightError("edge " + std::to_string(i) +
                                   " has nonpositive or non-finite weight");
    }
  }
  check_connected(vertex_count_, edges_);
}

WeightedGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int vertex_count = -1;
  long long edge_count = -1;
  std::vector<GraphEdge> edges;

  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      std::size_t pos = out.find_first_not_of(" \t\r");
      if (pos == std::string::npos) continue;  // blank
      if (out[pos] == '#') continue;           // comment
      return true;
    }
    return false;
  };

  if (!next_content_line(line)) throw MalformedLineError("missing header line");
  {
    std::istringstream ls(line);
    std::string extra;
    if (!(ls >> vertex_count >> edge_count) || (ls >> extra)) {
      throw MalformedLineError("bad header line: \"" + line + "\"");
    }
  }
  if (vertex_count <= 0) throw MalformedLineError("vertex count must be positive");
  if (edge_count < 0) throw MalformedLineError("edge count must be nonnegative");

  while (std::cmp_less(edges.size(), edge_count)) {
    if (!next_content_line(line)) {
      throw MalformedLineError("expected " + std::to_string(edge_count) +
                               " edges, found " + std::to_string(edges.size()));
    }
    std::istringstream ls(line);
    GraphEdge e;
    if (!(ls >> e.u >> e.v)) {
      throw MalformedLineError("bad edge line: \"" + line + "\"");
    }
    if (!(ls >> e.weight)) {
      e.weight = 1.0;  // weight column absent
    } else {
      std::string extra;
      if (ls >> extra) throw MalformedLineError("trailing tokens on edge line: \"" + line + "\"");
    }
    edges.push_back(e);
  }
  if (next_content_line(line)) {
    throw MalformedLineError("unexpected content after " + std::to_string(edge_count) +
                             " edges: \"" + line + "\"");
  }
  return WeightedGraph(vertex_count, std::move(edges));
}

WeightedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

std::string format_graph(const WeightedGraph& g) {
  std::ostringstream out;
  out.precision(17);
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
  }
  return out.str();
}

double weighted_tree_total(const WeightedGraph& g) {
  const int n = g.vertex_count();
  if (n == 1) return 1.0;  // empty product over the empty tree
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    lap(e.u, e.u) += e.weight;
    lap(e.v, e.v) += e.weight;
    lap(e.u, e.v) -= e.weight;
    lap(e.v, e.u) -= e.weight;
  }
  // Any cofactor of the Laplacian; drop the last row/column.
  Eigen::MatrixXd minor = lap.topLeftCorner(n - 1, n - 1);
  return Eigen::PartialPivLU<Eigen::MatrixXd>(minor).determinant();
}

std::vector<std::pair<TreeEdgeSet, double>> enumerate_spanning_trees(
    const WeightedGraph& g, int edge_cap) {
  const int m = g.edge_count();
  const int k = g.vertex_count() - 1;
  if (m > edge_cap) {
    throw EnumerationCapError("graph has " + std::to_string(m) +
                              " edges, enumeration cap is " + std::to_string(edge_cap));
  }
  std::vector<std::pair<TreeEdgeSet, double>> out;
  if (k == 0) {
    out.emplace_back(TreeEdgeSet{}, 1.0);
    return out;
  }
  // Lexicographic (|V|-1)-combinations of edge ids.
  std::vector<int> comb(static_cast<std::size_t>(k));
  std::iota(comb.begin(), comb.end(), 0);
  while (true) {
    if (is_spanning_tree(g, comb)) {
      double w = 1.0;
      for (int id : comb) w *= g.edge(id).weight;
      out.emplace_back(comb, w);
    }
    int i = k - 1;
    while (i >= 0 && comb[i] == m - k + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return out;
}

bool is_spanning_tree(const WeightedGraph& g, const std::vector<int>& edge_ids) {
  if (std::cmp_not_equal(edge_ids.size(), g.vertex_count() - 1)) return false;
  UnionFind uf(g.vertex_count());
  for (int id : edge_ids) {
    const auto& e = g.edge(id);
    if (!uf.unite(e.u, e.v)) return false;  // cycle
  }
  return true;  // acyclic with |V|-1 edges => spanning tree
}

}  // namespace treewalk
