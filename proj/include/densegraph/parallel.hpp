#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "densegraph/density.hpp"

namespace densegraph {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// 0 restores the runtime default (all hardware threads).
inline void set_threads(int t) {
#ifdef _OPENMP
  static const int hw = omp_get_max_threads();
  omp_set_num_threads(t > 0 ? t : hw);
#else
  (void)t;
#endif
}

// Static-schedule parallel loop; falls back to serial below `grain` so tiny
// inputs avoid fork overhead. The body must be safe for any iteration order.
template <class F>
inline void parallel_for(u64 lo, u64 hi, F&& f, u64 grain = 4096) {
  if (hi <= lo) return;
#ifdef _OPENMP
  if (hi - lo >= grain && max_threads() > 1) {
    std::int64_t a = static_cast<std::int64_t>(lo);
    std::int64_t b = static_cast<std::int64_t>(hi);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = a; i < b; ++i) f(static_cast<u64>(i));
    return;
  }
#else
  (void)grain;
#endif
  for (u64 i = lo; i < hi; ++i) f(i);
}

inline void atomic_inc(u32& x) {
  std::atomic_ref<u32>(x).fetch_add(1, std::memory_order_relaxed);
}

inline void atomic_add(u64& x, u64 v) {
  std::atomic_ref<u64>(x).fetch_add(v, std::memory_order_relaxed);
}

// B[i] = sum of a[i..n-1], B[n] = 0. Blocked two-pass scan; exact integer
// addition is associative, so the result is independent of the blocking.
inline std::vector<u64> suffix_sums(const std::vector<u32>& a) {
  const u64 n = a.size();
  std::vector<u64> b(n + 1, 0);
  const u64 kSerialCutoff = 1u << 15;
  if (n < kSerialCutoff || max_threads() == 1) {
    for (u64 i = n; i-- > 0;) b[i] = b[i + 1] + a[i];
    return b;
  }
  const u64 nblocks = 256;
  const u64 bs = (n + nblocks - 1) / nblocks;
  std::vector<u64> tail(nblocks + 1, 0);
  parallel_for(0, nblocks, [&](u64 blk) {
    u64 lo = blk * bs, hi = lo + bs < n ? lo + bs : n;
    u64 s = 0;
    for (u64 i = hi; i-- > lo;) s += a[i];
    tail[blk] = s;
  }, 1);
  for (u64 blk = nblocks; blk-- > 0;) tail[blk] += tail[blk + 1];
  parallel_for(0, nblocks, [&](u64 blk) {
    u64 lo = blk * bs, hi = lo + bs < n ? lo + bs : n;
    u64 s = tail[blk + 1];
    for (u64 i = hi; i-- > lo;) {
      s += a[i];
      b[i] = s;
    }
  }, 1);
  return b;
}

// splitmix64; deterministic seed-indexed stream for sampling checks.
inline u64 mix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace densegraph
