#include "densegraph/refine.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "densegraph/errors.hpp"
#include "densegraph/parallel.hpp"

namespace densegraph {

namespace {

constexpr u64 kParBatch = 2048;

// Shared batch-removal state. A batch is every alive vertex at the current
// minimum key; keys of surviving neighbors drop by one per removed edge,
// but only after the whole batch is gone (delayed updates), so removals
// within a batch never reorder each other.
struct PeelState {
  const Graph& g;
  std::vector<u64> key;
  std::vector<std::uint8_t> alive;
  std::vector<u32> perm, batch, touched;

  PeelState(const Graph& g_, const LoadState& s) : g(g_), key(g_.n), alive(g_.n, 1) {
    if (s.loads.size() != g.n) throw InvariantError("load vector does not match graph size");
    for (u64 v = 0; v < g.n; ++v) key[v] = s.loads[v] + g.degree(static_cast<u32>(v));
    perm.reserve(g.n);
  }

  // Remove the batch (already marked dead and appended to perm), decrement
  // neighbor keys, and report the touched vertices at their final keys.
  void remove_batch() {
    touched.clear();
#ifdef _OPENMP
    if (batch.size() >= kParBatch && max_threads() > 1) {
      const int nt = max_threads();
      std::vector<std::vector<u32>> local(static_cast<std::size_t>(nt));
#pragma omp parallel num_threads(nt)
      {
        auto& mine = local[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(batch.size()); ++i)
          for (u32 u : g.neighbors(batch[static_cast<std::size_t>(i)]))
            if (alive[u]) {
              std::atomic_ref<u64>(key[u]).fetch_sub(1, std::memory_order_relaxed);
              mine.push_back(u);
            }
      }
      for (auto& l : local) touched.insert(touched.end(), l.begin(), l.end());
      return;
    }
#endif
    for (u32 v : batch)
      for (u32 u : g.neighbors(v))
        if (alive[u]) {
          --key[u];
          touched.push_back(u);
        }
  }
};

// Bucket-queue peel for modest key ranges. Entries are lazy: a vertex is
// re-pushed at each new key, stale entries are skipped via the alive flag
// and a key match. Keys can drop below the cursor after a batch, so the
// cursor rewinds to the smallest re-pushed key.
Ordering peel_buckets(PeelState& st, u64 maxkey, bool one_at_a_time) {
  const u64 n = st.g.n;
  std::vector<std::vector<u32>> bkt(maxkey + 1);
  for (u64 v = 0; v < n; ++v) bkt[st.key[v]].push_back(static_cast<u32>(v));

  u64 cur = 0, removed = 0;
  while (removed < n) {
    st.batch.clear();
    while (st.batch.empty()) {
      if (cur > maxkey) throw InvariantError("peel cursor ran past the key range");
      auto& b = bkt[cur];
      for (u32 v : b)
        if (st.alive[v] && st.key[v] == cur) {
          st.alive[v] = 0;  // dedupes duplicate entries at the same key
          st.batch.push_back(v);
        }
      b.clear();
      if (st.batch.empty()) ++cur;
    }
    std::sort(st.batch.begin(), st.batch.end());
    if (one_at_a_time && st.batch.size() > 1) {
      for (std::size_t i = 1; i < st.batch.size(); ++i) {
        st.alive[st.batch[i]] = 1;
        bkt[cur].push_back(st.batch[i]);
      }
      st.batch.resize(1);
    }
    for (u32 v : st.batch) st.perm.push_back(v);
    removed += st.batch.size();
    st.remove_batch();
    u64 mink = cur;
    for (u32 u : st.touched) {
      bkt[st.key[u]].push_back(u);
      if (st.key[u] < mink) mink = st.key[u];
    }
    cur = mink;
  }
  return {std::move(st.perm), OrderKind::peel_by_load};
}

// Heap-based fallback for huge key ranges; identical batch semantics.
Ordering peel_heap(PeelState& st, bool one_at_a_time) {
  const u64 n = st.g.n;
  using Entry = std::pair<u64, u32>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  for (u64 v = 0; v < n; ++v) pq.emplace(st.key[v], static_cast<u32>(v));

  u64 removed = 0;
  while (removed < n) {
    st.batch.clear();
    u64 k = 0;
    while (st.batch.empty()) {
      if (pq.empty()) throw InvariantError("peel heap drained with vertices remaining");
      k = pq.top().first;
      while (!pq.empty() && pq.top().first == k) {
        u32 v = pq.top().second;
        pq.pop();
        if (st.alive[v] && st.key[v] == k) {
          st.alive[v] = 0;
          st.batch.push_back(v);
        }
      }
    }
    std::sort(st.batch.begin(), st.batch.end());
    if (one_at_a_time && st.batch.size() > 1) {
      for (std::size_t i = 1; i < st.batch.size(); ++i) {
        st.alive[st.batch[i]] = 1;
        pq.emplace(k, st.batch[i]);
      }
      st.batch.resize(1);
    }
    for (u32 v : st.batch) st.perm.push_back(v);
    removed += st.batch.size();
    st.remove_batch();
    for (u32 u : st.touched) pq.emplace(st.key[u], u);
  }
  return {std::move(st.perm), OrderKind::peel_by_load};
}

}  // namespace

Ordering load_peel_order(const Graph& g, const LoadState& s, bool one_at_a_time) {
  if (g.n == 0) return {{}, OrderKind::peel_by_load};
  PeelState st(g, s);
  u64 maxkey = *std::max_element(st.key.begin(), st.key.end());
  u64 cap = std::max<u64>(2 * g.n, 1u << 16);
  if (maxkey <= cap) return peel_buckets(st, maxkey, one_at_a_time);
  return peel_heap(st, one_at_a_time);
}

Ordering load_sort_order(const LoadState& s) {
  const u64 n = s.loads.size();
  Ordering o;
  o.kind = OrderKind::sort_by_load;
  o.perm.resize(n);
  std::iota(o.perm.begin(), o.perm.end(), 0u);
  if (n == 0) return o;

  u64 maxload = *std::max_element(s.loads.begin(), s.loads.end());
  if (maxload + 1 <= std::max<u64>(2 * n, 1u << 16)) {
    // Counting sort, stable: vertices are placed in ascending id order.
    std::vector<u64> cnt(maxload + 2, 0);
    for (u64 v = 0; v < n; ++v) ++cnt[s.loads[v] + 1];
    for (u64 k = 1; k < cnt.size(); ++k) cnt[k] += cnt[k - 1];
    for (u64 v = 0; v < n; ++v) o.perm[cnt[s.loads[v]]++] = static_cast<u32>(v);
  } else {
    std::stable_sort(o.perm.begin(), o.perm.end(),
                     [&](u32 a, u32 b) { return s.loads[a] < s.loads[b]; });
  }
  return o;
}

RefineOutcome density_and_load_update(const Graph& g, const Ordering& order, LoadState& s,
                                      bool want_densities) {
  const u64 n = g.n;
  if (order.perm.size() != n) throw InvariantError("ordering does not match graph size");
  if (s.loads.size() != n) throw InvariantError("load vector does not match graph size");

  std::vector<u64> pos(n, static_cast<u64>(-1));
  for (u64 i = 0; i < n; ++i) {
    u32 v = order.perm[i];
    if (v >= n || pos[v] != static_cast<u64>(-1))
      throw InvariantError("ordering is not a permutation");
    pos[v] = i;
  }

  // Each edge charges the endpoint that leaves first.
  std::vector<u32> A(n, 0);
  parallel_for(0, n, [&](u64 v) {
    for (u32 u : g.neighbors(static_cast<u32>(v)))
      if (u > v) atomic_inc(A[std::min(pos[v], pos[u])]);
  });

  std::vector<u64> B = suffix_sums(A);
  if (B[0] != g.m) throw InvariantError("charge total does not equal edge count");

  RefineOutcome out;
  for (u64 i = 0; i < n; ++i) {
    Density di{B[i], n - i};
    if (di > out.rho_max) {
      out.rho_max = di;
      out.best_prefix = i;
    }
    if (A[i] > out.width) out.width = A[i];
  }
  parallel_for(0, n, [&](u64 i) { s.loads[order.perm[i]] += A[i]; });

  if (want_densities) {
    out.densities.resize(n);
    for (u64 i = 0; i < n; ++i) out.densities[i] = Density{B[i], n - i};
  }
  return out;
}

RefineOutcome charikar_peel(const Graph& g) {
  LoadState s;
  s.loads.assign(g.n, 0);
  Ordering o = load_peel_order(g, s);
  return density_and_load_update(g, o, s);
}

u64 slack_violations(const Ordering& order, const std::vector<u64>& loads, u64 allowed_slack,
                     u64 samples, u64 seed) {
  const u64 n = order.perm.size();
  if (n < 2) return 0;
  u64 bad = 0;
  for (u64 t = 0; t < samples; ++t) {
    u64 i = mix64(seed ^ (2 * t + 1)) % n;
    u64 j = mix64(seed ^ (2 * t + 2)) % n;
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    if (loads[order.perm[i]] > loads[order.perm[j]] + allowed_slack) ++bad;
  }
  return bad;
}

}  // namespace densegraph
