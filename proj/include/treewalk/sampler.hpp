#pragma once

#include <vector>

#include "treewalk/graph.hpp"
#include "treewalk/linkcut.hpp"
#include "treewalk/rng.hpp"
#include "treewalk/walk.hpp"

namespace treewalk {

/*
 * Down-up walk on complements of spanning trees. The forest holds the
 * current tree; non_tree is the walk's state (the k = |E| - |V| + 1 edges
 * outside it). One step: pick e from non_tree uniformly, then swap it with
 * an edge of the cycle it closes, chosen proportionally to inverse weight
 * (possibly e itself). Each step is amortized O(log |E|).
 */
struct TreeSamplerState {
  DynamicForest forest;
  std::vector<int> non_tree;
  std::vector<int> position;  // edge id -> index in non_tree, or -1 if in tree

  explicit TreeSamplerState(int vertex_count) : forest(vertex_count) {}

  int cotree_size() const { return static_cast<int>(non_tree.size()); }
};

/// Starting state: a depth-first-search spanning tree.
TreeSamplerState init_state(const WeightedGraph& g);

/// One walk transition; requires cotree_size() >= 1.
void cographic_step(TreeSamplerState& state, const WeightedGraph& g, Rng& rng);

/// Edge ids of the current spanning tree, sorted.
TreeEdgeSet current_tree(const TreeSamplerState& state, const WeightedGraph& g);

/// Runs the schedule from mixing_steps (or config.step_override) and returns
/// the final tree. The output law is within epsilon total variation of
/// Pr[T] proportional to the product of tree edge weights.
TreeEdgeSet sample_tree(const WeightedGraph& g, const WalkConfig& config, Rng& rng);

/// `count` independent chains; chain i draws its RNG from (config.seed, i),
/// so results do not depend on how the work is split across `jobs` threads.
std::vector<TreeEdgeSet> sample_many(const WeightedGraph& g, const WalkConfig& config,
                                     long long count, int jobs = 1);

/// Structural invariants of a state: exact tree/non-tree partition and the
/// forest spanning all vertices. Used by tests; O(|E| log |V|).
bool validate_state(TreeSamplerState& state, const WeightedGraph& g);

}  // namespace treewalk
