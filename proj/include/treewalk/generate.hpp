#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treewalk/graph.hpp"
#include "treewalk/walk.hpp"

namespace treewalk {

/// Connected ~4-regular multigraph with `edge_count` edges: the union of two
/// random Hamiltonian cycles on ~edge_count/2 vertices, padded with random
/// chords when edge_count is not an exact multiple.
WeightedGraph random_regular_graph(int edge_count, std::uint64_t seed);

/// Square grid graph with roughly `edge_count` edges.
WeightedGraph grid_graph(int edge_count);

struct BenchRow {
  int n_edges = 0;
  int vertices = 0;
  long long steps = 0;
  double wall_seconds = 0.0;
  double seconds_per_step = 0.0;
};

/// Times one sample_tree run per requested size. family is "random-regular"
/// or "grid".
std::vector<BenchRow> run_bench(const std::vector<int>& sizes, double epsilon,
                                double schedule_constant, const std::string& family,
                                std::uint64_t seed);

}  // namespace treewalk
