#pragma once

#include <vector>

#include "densegraph/core.hpp"
#include "densegraph/density.hpp"
#include "densegraph/graph.hpp"
#include "densegraph/refine.hpp"

namespace densegraph {

enum class Algorithm { peel, sort };
enum class Pruning { none, exact, approx, hybrid };

struct RunConfig {
  Algorithm algorithm = Algorithm::peel;
  Pruning pruning = Pruning::exact;
  u64 iterations = 0;      // explicit T; 0 defers to epsilon
  double epsilon = 0;      // used only when iterations == 0
  u64 iteration_cap = 1000;
  u64 c_num = 3, c_den = 2;  // coreness approximation factor
  int threads = 0;           // 0 keeps the runtime default
  bool reset_loads = false;  // zero loads after every re-prune
  u64 slack_samples = 64;    // per-iteration ordering audit (0 disables)
};

struct IterRecord {
  u64 iter = 0;
  Density rho{0, 1};  // this iteration's best suffix density, reduced
  u64 n = 0, m = 0;   // graph the iteration ran on
  u64 width = 0;
  double ms = 0;
};

struct InitRecord {
  bool kmax_known = false;
  bool kmax_exact = false;
  u32 kmax = 0;        // exact, or the approximate labeling's max
  u32 threshold = 0;   // initial pruning threshold ceil(L0) or ceil(L0/c)
  u64 pruned_n = 0, pruned_m = 0;
  double coreness_ms = 0;
  double init_ms = 0;
};

struct RunTrace {
  InitRecord init;
  std::vector<IterRecord> iters;
  u64 slack_violations = 0;
  std::vector<u64> final_vertices;  // original ids left after all prunes
};

struct RunResult {
  Density best{0, 1};         // reduced
  std::vector<u64> witness;   // original ids, ascending
  u64 witness_edges = 0;
  u64 iterations = 0;
  u64 max_width = 0;
  double total_ms = 0;
  RunTrace trace;
};

// T = max(10, ceil((delta / lower_bound) * ln(n) / epsilon^2)), capped.
u64 default_iterations(u64 delta, double lower_bound, u64 n, double epsilon, u64 cap = 1000);

// Prune to the core certified to contain every densest subgraph, then run
// load-guided refinement iterations, re-pruning whenever the best density
// found so far raises the core threshold.
RunResult run(const Graph& g, const RunConfig& cfg);

}  // namespace densegraph
