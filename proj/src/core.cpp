#include "densegraph/core.hpp"

#include <algorithm>

#include "densegraph/errors.hpp"
#include "densegraph/parallel.hpp"

namespace densegraph {

namespace {

constexpr u64 kParBatch = 2048;  // frontier size where parallel decrement pays

// Threshold peeling engine shared by the exact and approximate variants.
// Buckets hold lazily updated (vertex at residual degree) entries; a vertex
// may appear several times, and the alive flag deduplicates at drain time.
// Degrees only decrease, so every entry in bucket j <= bound is peelable.
struct Peeler {
  const Graph& g;
  std::vector<u32> deg;
  std::vector<std::uint8_t> alive;
  std::vector<std::vector<u32>> bkt;
  std::vector<u32> frontier, touched;
  u64 remaining;
  u64 maxdeg = 0;
  u32 rounds = 0;

  explicit Peeler(const Graph& g_) : g(g_), deg(g_.n), alive(g_.n, 1), remaining(g_.n) {
    for (u64 v = 0; v < g.n; ++v) {
      deg[v] = static_cast<u32>(g.degree(static_cast<u32>(v)));
      if (deg[v] > maxdeg) maxdeg = deg[v];
    }
    bkt.resize(maxdeg + 1);
    for (u64 v = 0; v < g.n; ++v) bkt[deg[v]].push_back(static_cast<u32>(v));
  }

  // All alive vertices with residual degree <= bound, ascending id.
  bool drain(u64 bound) {
    frontier.clear();
    u64 top = std::min(bound, maxdeg);
    for (u64 j = 0; j <= top; ++j) {
      for (u32 v : bkt[j])
        if (alive[v]) {
          alive[v] = 0;
          frontier.push_back(v);
        }
      bkt[j].clear();
    }
    std::sort(frontier.begin(), frontier.end());
    return !frontier.empty();
  }

  // One parallel round: frontier is already marked dead; decrement its
  // neighbors and re-bucket them at their final residual degree.
  void peel_round() {
    ++rounds;
    remaining -= frontier.size();
    touched.clear();
#ifdef _OPENMP
    if (frontier.size() >= kParBatch && max_threads() > 1) {
      const int nt = max_threads();
      std::vector<std::vector<u32>> local(static_cast<std::size_t>(nt));
#pragma omp parallel num_threads(nt)
      {
        auto& mine = local[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(frontier.size()); ++i)
          for (u32 u : g.neighbors(frontier[static_cast<std::size_t>(i)]))
            if (alive[u]) {
              std::atomic_ref<u32>(deg[u]).fetch_sub(1, std::memory_order_relaxed);
              mine.push_back(u);
            }
      }
      for (auto& l : local) touched.insert(touched.end(), l.begin(), l.end());
    } else
#endif
    {
      for (u32 v : frontier)
        for (u32 u : g.neighbors(v))
          if (alive[u]) {
            --deg[u];
            touched.push_back(u);
          }
    }
    for (u32 u : touched) bkt[deg[u]].push_back(u);
  }
};

CoreDecomposition run_peel(const Graph& g, CoreKind kind, u64 c_num, u64 c_den) {
  if (g.n == 0) throw EmptyGraphError("coreness of empty graph");
  Peeler p(g);
  CoreDecomposition dec;
  dec.labels.assign(g.n, 0);
  dec.kind = kind;
  dec.c_num = c_num;
  dec.c_den = c_den;

  u64 bound = 0, label = 0;  // exact threshold d, or approx pre-phase
  u64 t = 1;                 // next approx phase base t_i
  while (p.remaining > 0) {
    if (!p.drain(bound)) {
      if (kind == CoreKind::exact) {
        ++bound;
        label = bound;
      } else {
        label = t;
        u64 nt = std::max(t + 1, ceil_div(t * c_num, c_den));
        bound = nt - 1;
        t = nt;
      }
      continue;
    }
    for (u32 v : p.frontier) dec.labels[v] = static_cast<u32>(label);
    if (label > dec.kmax) dec.kmax = static_cast<u32>(label);
    p.peel_round();
  }
  dec.peel_rounds = p.rounds;
  return dec;
}

}  // namespace

CoreDecomposition exact_coreness(const Graph& g) {
  return run_peel(g, CoreKind::exact, 1, 1);
}

CoreDecomposition approx_coreness(const Graph& g, u64 c_num, u64 c_den) {
  if (c_den == 0 || c_num <= c_den)
    throw ParamError("approximation factor must be > 1");
  return run_peel(g, CoreKind::approximate, c_num, c_den);
}

Graph get_core(const Graph& g, const CoreDecomposition& dec, u32 k,
               std::vector<u32>* old_to_new) {
  if (dec.labels.size() != g.n)
    throw InvariantError("core labels do not match graph size");
  std::vector<std::uint8_t> keep(g.n);
  for (u64 v = 0; v < g.n; ++v) keep[v] = dec.labels[v] >= k;
  return induced_subgraph(g, keep, old_to_new);
}

}  // namespace densegraph
