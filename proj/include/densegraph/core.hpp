#pragma once

#include <vector>

#include "densegraph/graph.hpp"

namespace densegraph {

enum class CoreKind { exact, approximate };

struct CoreDecomposition {
  std::vector<u32> labels;  // per dense vertex id
  u32 kmax = 0;             // max label
  u32 peel_rounds = 0;      // parallel batch-removal rounds
  CoreKind kind = CoreKind::exact;
  u64 c_num = 1, c_den = 1;  // approximation factor (1 for exact)
};

// Exact coreness by threshold peeling: for d = 0, 1, ... remove all
// vertices of residual degree <= d in rounds until none remain; a vertex
// removed at threshold d has coreness d. Isolated vertices get label 0.
CoreDecomposition exact_coreness(const Graph& g);

// Approximate coreness with factor c = c_num/c_den > 1: thresholds follow
// t_{i+1} = max(t_i + 1, ceil(c * t_i)) from t_0 = 1, and every vertex
// peeled inside phase i (residual degree < t_{i+1}) is labeled t_i.
// Labels satisfy k(v)/c <= label(v) <= k(v).
CoreDecomposition approx_coreness(const Graph& g, u64 c_num, u64 c_den);

// Subgraph induced by vertices with label >= k.
Graph get_core(const Graph& g, const CoreDecomposition& dec, u32 k,
               std::vector<u32>* old_to_new = nullptr);

}  // namespace densegraph
