// Test-only oracles, kept independent of the library's code paths: BFS over
// the raw neighbor oracle with ordered maps, and union-find over the edge
// list for component decompositions.
#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "endscope/boundary.hpp"
#include "endscope/ends.hpp"
#include "endscope/graph.hpp"

namespace oracle {

using namespace endscope;

// Ball sizes per distance, computed straight from the neighbor oracle.
inline std::vector<std::size_t> bfs_ball_sizes(const GraphSpec& spec,
                                               const VertexKey& basepoint, int radius) {
  std::map<VertexKey, int> dist;
  std::vector<VertexKey> frontier{spec.canonical(basepoint)};
  dist[frontier.front()] = 0;
  for (int d = 1; d <= radius; ++d) {
    std::vector<VertexKey> next;
    for (const auto& v : frontier)
      for (const auto& u : spec.neighbors(v))
        if (!dist.count(u)) {
          dist[u] = d;
          next.push_back(u);
        }
    frontier = std::move(next);
  }
  std::vector<std::size_t> sizes(static_cast<std::size_t>(radius) + 1, 0);
  for (const auto& [k, d] : dist) ++sizes[static_cast<std::size_t>(d)];
  for (std::size_t i = 1; i < sizes.size(); ++i) sizes[i] += sizes[i - 1];
  return sizes;  // sizes[r] = |B_r|
}

// Union-find components of the window minus a removed-edge predicate.
struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

struct FloodFill {
  std::vector<std::uint32_t> root_of;          // vertex -> representative
  std::map<std::uint32_t, std::vector<VertexId>> groups;
  std::size_t frontier_touching = 0;
};

template <typename RemovedPred>
FloodFill flood_fill(const Window& w, RemovedPred removed) {
  UnionFind uf(w.size());
  const auto& edges = w.edges();
  for (EdgeId e = 0; e < edges.size(); ++e)
    if (!removed(e)) uf.unite(edges[e].a, edges[e].b);
  FloodFill out;
  out.root_of.resize(w.size());
  for (VertexId v = 0; v < w.size(); ++v) {
    out.root_of[v] = uf.find(v);
    out.groups[out.root_of[v]].push_back(v);
  }
  std::set<std::uint32_t> touched;
  for (VertexId v : w.frontier()) touched.insert(uf.find(v));
  out.frontier_touching = touched.size();
  return out;
}

// Unbounded-component count for the canonical removal M_r, via union-find.
inline std::size_t unbounded_count(const Window& w, int r) {
  const auto& edges = w.edges();
  auto removed = [&](EdgeId e) {
    return w.distance(edges[e].a) <= r || w.distance(edges[e].b) <= r;
  };
  return flood_fill(w, removed).frontier_touching;
}

// Same partition shape as the library result?
inline bool same_partition(const Window& w, const FloodFill& ff,
                           const ComponentPartition& part) {
  if (ff.groups.size() != part.components.size()) return false;
  for (VertexId u = 0; u < w.size(); ++u)
    for (VertexId v = u; v < w.size(); ++v) {
      bool lib = part.comp_index[u] == part.comp_index[v];
      bool ora = ff.root_of[u] == ff.root_of[v];
      if (lib != ora) return false;
    }
  return true;
}

// Deterministic random interior vertex sets (members at distance <= R-2).
inline VertexSet random_interior_set(const Window& w, std::mt19937_64& rng,
                                     double density = 0.3) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<VertexId> ids;
  for (VertexId v = 0; v < w.size(); ++v)
    if (w.distance(v) <= w.radius() - 2 && coin(rng) < density) ids.push_back(v);
  return VertexSet::of_ids(w, std::move(ids));
}

}  // namespace oracle
