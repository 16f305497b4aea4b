#pragma once

#include <vector>

#include "densegraph/density.hpp"
#include "densegraph/graph.hpp"

namespace densegraph {

struct OracleResult {
  Density rho_star{0, 1};     // reduced
  std::vector<u64> witness;   // original ids, ascending
};

// Exhaustive densest subgraph over all nonempty vertex subsets; the graph
// must have at most `limit` vertices. Ties prefer fewer vertices, then the
// lexicographically smallest id set.
OracleResult brute_force_densest(const Graph& g, u32 limit = 22);

// Removing a vertex of degree below the average strictly raises the
// density. Checks the implication deg(v) < rho(G) => rho(G - v) > rho(G);
// a vertex with deg(v) >= rho(G) satisfies it vacuously.
bool check_degree_lemma(const Graph& g, u32 v);

// The brute-force witness must survive inside the k-core.
bool check_core_containment(const Graph& g, u32 k);

}  // namespace densegraph
