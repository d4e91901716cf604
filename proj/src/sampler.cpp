#include "treewalk/sampler.hpp"

#include <algorithm>
#include <cassert>
#include <thread>
#include <utility>

namespace treewalk {

TreeSamplerState init_state(const WeightedGraph& g) {
  const int n = g.vertex_count();
  TreeSamplerState state(n);
  state.position.assign(static_cast<std::size_t>(g.edge_count()), -1);

  // adjacency: vertex -> (neighbor, edge id)
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (int id = 0; id < g.edge_count(); ++id) {
    const auto& e = g.edge(id);
    adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, id);
    adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, id);
  }

  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  visited[0] = 1;
  std::vector<char> in_tree(static_cast<std::size_t>(g.edge_count()), 0);
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (auto [v, id] : adj[static_cast<std::size_t>(u)]) {
      if (visited[static_cast<std::size_t>(v)]) continue;
      visited[static_cast<std::size_t>(v)] = 1;
      in_tree[static_cast<std::size_t>(id)] = 1;
      state.forest.link(u, v, id, g.edge(id).weight);
      stack.push_back(v);
    }
  }

  for (int id = 0; id < g.edge_count(); ++id) {
    if (in_tree[static_cast<std::size_t>(id)]) continue;
    state.position[static_cast<std::size_t>(id)] = static_cast<int>(state.non_tree.size());
    state.non_tree.push_back(id);
  }
  return state;
}

void cographic_step(TreeSamplerState& state, const WeightedGraph& g, Rng& rng) {
  assert(!state.non_tree.empty());
  const int idx = static_cast<int>(uniform_index(rng, state.non_tree.size()));
  const int e = state.non_tree[static_cast<std::size_t>(idx)];
  const auto& edge = g.edge(e);

  // Cycle candidates are e itself plus the tree path between its endpoints,
  // weighted by inverse weight; the forest resolves the draw in one pass.
  const double r = uniform01(rng);
  const int f = state.forest.swap_cycle_edge(edge.u, edge.v, 1.0 / edge.weight, r, e,
                                             edge.weight);
  if (f < 0) {
    return;  // f = e: the dropped complement element came straight back
  }
  state.non_tree[static_cast<std::size_t>(idx)] = f;
  state.position[static_cast<std::size_t>(f)] = idx;
  state.position[static_cast<std::size_t>(e)] = -1;
}

TreeEdgeSet current_tree(const TreeSamplerState& state, const WeightedGraph& g) {
  TreeEdgeSet tree;
  tree.reserve(static_cast<std::size_t>(g.vertex_count() - 1));
  for (int id = 0; id < g.edge_count(); ++id) {
    if (state.position[static_cast<std::size_t>(id)] < 0) tree.push_back(id);
  }
  return tree;
}

TreeEdgeSet sample_tree(const WeightedGraph& g, const WalkConfig& config, Rng& rng) {
  TreeSamplerState state = init_state(g);
  const int k = state.cotree_size();
  if (k == 0) return current_tree(state, g);

  const long long steps = config.step_override
                              ? *config.step_override
                              : mixing_steps(k, config.epsilon, config.schedule_constant);
  for (long long step = 0; step < steps; ++step) {
    cographic_step(state, g, rng);
  }
  return current_tree(state, g);
}

std::vector<TreeEdgeSet> sample_many(const WeightedGraph& g, const WalkConfig& config,
                                     long long count, int jobs) {
  if (count < 1) throw Error("sample_many: count must be at least 1");
  if (jobs < 1) throw Error("sample_many: jobs must be at least 1");
  std::vector<TreeEdgeSet> out(static_cast<std::size_t>(count));
  auto worker = [&](long long first, long long stride) {
    for (long long chain = first; chain < count; chain += stride) {
      Rng rng = chain_rng(config.seed, static_cast<std::uint64_t>(chain));
      out[static_cast<std::size_t>(chain)] = sample_tree(g, config, rng);
    }
  };
  if (jobs == 1 || count == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker, t, jobs);
    for (auto& t : threads) t.join();
  }
  return out;
}

bool validate_state(TreeSamplerState& state, const WeightedGraph& g) {
  if (std::cmp_not_equal(state.position.size(), g.edge_count())) return false;
  if (state.cotree_size() != g.cotree_size()) return false;
  std::vector<char> seen(static_cast<std::size_t>(g.edge_count()), 0);
  for (std::size_t idx = 0; idx < state.non_tree.size(); ++idx) {
    int id = state.non_tree[idx];
    if (id < 0 || id >= g.edge_count()) return false;
    if (seen[static_cast<std::size_t>(id)]) return false;
    seen[static_cast<std::size_t>(id)] = 1;
    if (state.position[static_cast<std::size_t>(id)] != static_cast<int>(idx)) return false;
    if (state.forest.has_edge(id)) return false;
  }
  for (int id = 0; id < g.edge_count(); ++id) {
    if (seen[static_cast<std::size_t>(id)]) continue;
    if (state.position[static_cast<std::size_t>(id)] != -1) return false;
    if (!state.forest.has_edge(id)) return false;
  }
  if (state.forest.edge_count() != g.vertex_count() - 1) return false;
  for (int v = 1; v < g.vertex_count(); ++v) {
    if (!state.forest.connected(0, v)) return false;
  }
  return true;
}

}  // namespace treewalk
