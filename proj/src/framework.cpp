#include "densegraph/framework.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "densegraph/errors.hpp"
#include "densegraph/parallel.hpp"

namespace densegraph {

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

// Core threshold certified to keep every subgraph of density > L: exact
// labels need ceil(L); c-approximate labels only guarantee label >= k/c,
// so the threshold relaxes to ceil(L/c).
u64 threshold_for(const Density& lower, bool approx_labels, u64 c_num, u64 c_den) {
  return approx_labels ? ceil_scaled(lower, c_den, c_num) : ceil_scaled(lower, 1, 1);
}

std::vector<u32> remap_labels(const std::vector<u32>& labels, const std::vector<u32>& old_to_new,
                              u64 new_n) {
  std::vector<u32> out(new_n);
  for (u64 v = 0; v < labels.size(); ++v)
    if (old_to_new[v] != kNoVertex) out[old_to_new[v]] = labels[v];
  return out;
}

}  // namespace

u64 default_iterations(u64 delta, double lower_bound, u64 n, double epsilon, u64 cap) {
  if (!(epsilon > 0)) throw ParamError("epsilon must be positive");
  if (!(lower_bound >= 1)) throw ParamError("density lower bound must be >= 1");
  if (n == 0) throw ParamError("iteration bound needs a nonempty graph");
  double t = (static_cast<double>(delta) / lower_bound) * std::log(static_cast<double>(n)) /
             (epsilon * epsilon);
  u64 iters = (t >= static_cast<double>(cap)) ? cap : static_cast<u64>(std::ceil(t));
  return std::min<u64>(cap, std::max<u64>(10, iters));
}

RunResult run(const Graph& g, const RunConfig& cfg) {
  if (g.n == 0) throw EmptyGraphError("run on empty graph");
  if (cfg.threads > 0) set_threads(cfg.threads);
  const double t0 = now_ms();

  RunResult res;
  InitRecord& init = res.trace.init;

  Graph cur;
  std::vector<u32> labels;  // coreness labels aligned with cur
  bool approx_labels = false;
  u64 thresh = 0;
  Density lower{0, 1};

  if (cfg.pruning == Pruning::none) {
    cur = g;
  } else {
    double c0 = now_ms();
    std::vector<u32> map;
    if (cfg.pruning == Pruning::exact) {
      CoreDecomposition dec = exact_coreness(g);
      lower = {dec.kmax, 2};
      thresh = ceil_scaled(lower, 1, 1);
      cur = get_core(g, dec, static_cast<u32>(thresh), &map);
      labels = remap_labels(dec.labels, map, cur.n);
      init = {true, true, dec.kmax, static_cast<u32>(thresh), 0, 0, 0, 0};
    } else {
      CoreDecomposition dec = approx_coreness(g, cfg.c_num, cfg.c_den);
      lower = {dec.kmax, 2};
      thresh = threshold_for(lower, true, cfg.c_num, cfg.c_den);
      cur = get_core(g, dec, static_cast<u32>(thresh), &map);
      labels = remap_labels(dec.labels, map, cur.n);
      approx_labels = true;
      init = {true, false, dec.kmax, static_cast<u32>(thresh), 0, 0, 0, 0};
      if (cfg.pruning == Pruning::hybrid) {
        // The max core survives the approximate prune, so exact labels on
        // the remainder reproduce the true kmax and the exact threshold.
        CoreDecomposition fine = exact_coreness(cur);
        lower = {fine.kmax, 2};
        thresh = ceil_scaled(lower, 1, 1);
        Graph next = get_core(cur, fine, static_cast<u32>(thresh), &map);
        labels = remap_labels(fine.labels, map, next.n);
        cur = std::move(next);
        approx_labels = false;
        init = {true, true, fine.kmax, static_cast<u32>(thresh), 0, 0, 0, 0};
      }
    }
    init.coreness_ms = now_ms() - c0;
    if (cur.n == 0) throw InvariantError("pruning removed every vertex");
  }
  init.pruned_n = cur.n;
  init.pruned_m = cur.m;

  u64 iterations = cfg.iterations;
  if (iterations == 0) {
    double lb = std::max(1.0, lower.value());
    iterations =
        default_iterations(cur.stats().max_degree, lb, cur.n, cfg.epsilon, cfg.iteration_cap);
  }
  init.init_ms = now_ms() - t0;

  LoadState state;
  state.loads.assign(cur.n, 0);
  Density best{0, 1};
  std::vector<u64> witness;
  u64 delta_cur = cur.stats().max_degree;

  for (u64 it = 1; it <= iterations; ++it) {
    const double it0 = now_ms();
    Ordering order = cfg.algorithm == Algorithm::peel ? load_peel_order(cur, state)
                                                      : load_sort_order(state);
    if (cfg.slack_samples > 0) {
      u64 slack = cfg.algorithm == Algorithm::peel ? delta_cur : 0;
      res.trace.slack_violations +=
          slack_violations(order, state.loads, slack, cfg.slack_samples, 0x5eed0000ULL + it);
    }
    RefineOutcome out = density_and_load_update(cur, order, state);
    res.trace.iters.push_back(
        {it, out.rho_max.reduced(), cur.n, cur.m, out.width, now_ms() - it0});
    if (out.width > res.max_width) res.max_width = out.width;
    if (out.rho_max <= best) continue;

    best = out.rho_max;
    witness.clear();
    for (u64 i = out.best_prefix; i < cur.n; ++i) witness.push_back(cur.orig[order.perm[i]]);
    if (best > lower) lower = best;

    if (cfg.pruning != Pruning::none) {
      u64 nt = threshold_for(lower, approx_labels, cfg.c_num, cfg.c_den);
      if (nt > thresh) {
        std::vector<std::uint8_t> keep(cur.n);
        for (u64 v = 0; v < cur.n; ++v) keep[v] = labels[v] >= nt;
        std::vector<u32> map;
        Graph next = induced_subgraph(cur, keep, &map);
        if (next.n == 0) throw InvariantError("re-pruning removed every vertex");
        labels = remap_labels(labels, map, next.n);
        std::vector<u64> loads(next.n, 0);
        if (!cfg.reset_loads)
          for (u64 v = 0; v < cur.n; ++v)
            if (map[v] != kNoVertex) loads[map[v]] = state.loads[v];
        state.loads = std::move(loads);
        cur = std::move(next);
        delta_cur = cur.stats().max_degree;
        thresh = nt;
      }
    }
  }

  res.best = best.reduced();
  res.iterations = iterations;
  std::sort(witness.begin(), witness.end());
  res.witness = std::move(witness);

  // Recount the witness on the input graph and cross-check the density.
  std::vector<std::uint8_t> in_witness(g.n, 0);
  std::vector<u32> dense;
  dense.reserve(res.witness.size());
  for (u64 id : res.witness) {
    auto it = std::lower_bound(g.orig.begin(), g.orig.end(), id);
    if (it == g.orig.end() || *it != id) throw InvariantError("witness vertex not in input graph");
    u32 v = static_cast<u32>(it - g.orig.begin());
    in_witness[v] = 1;
    dense.push_back(v);
  }
  u64 arcs = 0;
  for (u32 v : dense)
    for (u32 u : g.neighbors(v)) arcs += in_witness[u];
  res.witness_edges = arcs / 2;
  if (Density{res.witness_edges, res.witness.size()} != res.best)
    throw InvariantError("witness does not reproduce the reported density");

  res.trace.final_vertices = cur.orig;
  res.total_ms = now_ms() - t0;
  return res;
}

}  // namespace densegraph
