#pragma once

#include <vector>

#include "densegraph/density.hpp"
#include "densegraph/graph.hpp"

namespace densegraph {

struct LoadState {
  std::vector<u64> loads;  // per dense vertex id
};

enum class OrderKind { peel_by_load, sort_by_load };

struct Ordering {
  std::vector<u32> perm;  // perm[i] = vertex at position i
  OrderKind kind = OrderKind::peel_by_load;
};

struct RefineOutcome {
  Density rho_max{0, 1};          // best suffix density (unreduced)
  u64 best_prefix = 0;            // smallest position attaining rho_max
  u64 width = 0;                  // max induced-degree charge, bounds load growth
  std::vector<Density> densities; // per-position suffix densities (on request)
};

// Min-key batch peeling on key(v) = load(v) + residual degree. Each step
// removes every alive vertex at the current minimum key (ascending id
// within the batch); neighbor keys update only after the whole batch.
// With one_at_a_time, only the smallest id of each batch is removed.
Ordering load_peel_order(const Graph& g, const LoadState& s, bool one_at_a_time = false);

// Stable ascending sort by (load, id).
Ordering load_sort_order(const LoadState& s);

// Charges each edge to the earlier endpoint position, suffix-sums the
// charges to score every suffix, adds the charges into the loads, and
// reports the best suffix density plus the width of this iteration.
RefineOutcome density_and_load_update(const Graph& g, const Ordering& order, LoadState& s,
                                      bool want_densities = false);

// One zero-load peel iteration; loads are discarded.
RefineOutcome charikar_peel(const Graph& g);

// Sampled check of the ordering slack: position i before j must satisfy
// load(v_i) <= load(v_j) + allowed_slack under the loads used to order.
u64 slack_violations(const Ordering& order, const std::vector<u64>& loads, u64 allowed_slack,
                     u64 samples, u64 seed);

}  // namespace densegraph
