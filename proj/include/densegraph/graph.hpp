#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "densegraph/density.hpp"
#include "densegraph/parallel.hpp"

namespace densegraph {

constexpr u32 kNoVertex = static_cast<u32>(-1);

struct GraphStats {
  u64 n = 0;
  u64 m = 0;  // undirected edge count
  u64 max_degree = 0;
};

// Undirected simple graph in CSR form. Vertices carry dense ids 0..n-1
// assigned in ascending order of the original input ids (kept in `orig`).
// Invariants: symmetric adjacency, no self-loops or duplicates, every
// vertex has degree >= 1, adjacency lists sorted ascending.
struct Graph {
  u64 n = 0;
  u64 m = 0;
  std::vector<u64> offs;  // n + 1
  std::vector<u32> adj;   // 2m
  std::vector<u64> orig;  // dense id -> original id, strictly increasing

  u64 degree(u32 v) const { return offs[v + 1] - offs[v]; }

  std::span<const u32> neighbors(u32 v) const {
    return {adj.data() + offs[v], adj.data() + offs[v + 1]};
  }

  GraphStats stats() const {
    GraphStats s{n, m, 0};
    for (u64 v = 0; v < n; ++v)
      if (degree(static_cast<u32>(v)) > s.max_degree) s.max_degree = degree(static_cast<u32>(v));
    return s;
  }

  Density density() const { return {m, n == 0 ? 1 : n}; }
};

// Subgraph induced by keep[v] != 0. New dense ids follow the old dense
// order, which preserves the ascending-original-id numbering. Optionally
// reports old dense id -> new dense id (kNoVertex for dropped vertices).
inline Graph induced_subgraph(const Graph& g, const std::vector<std::uint8_t>& keep,
                              std::vector<u32>* old_to_new = nullptr) {
  Graph h;
  std::vector<u32> map(g.n, kNoVertex);
  for (u64 v = 0; v < g.n; ++v)
    if (keep[v]) map[v] = static_cast<u32>(h.n++);

  h.offs.assign(h.n + 1, 0);
  h.orig.resize(h.n);
  parallel_for(0, g.n, [&](u64 v) {
    if (map[v] == kNoVertex) return;
    u64 d = 0;
    for (u32 u : g.neighbors(static_cast<u32>(v)))
      if (map[u] != kNoVertex) ++d;
    h.offs[map[v] + 1] = d;
    h.orig[map[v]] = g.orig[v];
  });
  for (u64 v = 0; v < h.n; ++v) h.offs[v + 1] += h.offs[v];

  h.adj.resize(h.offs[h.n]);
  parallel_for(0, g.n, [&](u64 v) {
    if (map[v] == kNoVertex) return;
    u64 w = h.offs[map[v]];
    for (u32 u : g.neighbors(static_cast<u32>(v)))
      if (map[u] != kNoVertex) h.adj[w++] = map[u];
  });
  h.m = h.adj.size() / 2;

  if (old_to_new) *old_to_new = std::move(map);
  return h;
}

}  // namespace densegraph
