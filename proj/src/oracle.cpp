#include "densegraph/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "densegraph/core.hpp"
#include "densegraph/errors.hpp"
#include "densegraph/parallel.hpp"

namespace densegraph {

namespace {

struct Candidate {
  u32 edges = 0;
  u32 verts = 0;
  u32 mask = 0;
};

// Sorted-id-list lexicographic order for equal-size sets: the smaller set
// owns the lowest bit of the symmetric difference.
bool lex_smaller(u32 a, u32 b) {
  u32 d = a ^ b;
  return (a & (d & ~(d - 1))) != 0;
}

bool better(const Candidate& a, const Candidate& b) {
  if (b.verts == 0) return true;
  u64 lhs = u64(a.edges) * b.verts;
  u64 rhs = u64(b.edges) * a.verts;
  if (lhs != rhs) return lhs > rhs;
  if (a.verts != b.verts) return a.verts < b.verts;
  return lex_smaller(a.mask, b.mask);
}

u32 count_edges(const std::vector<u32>& adjm, u32 members) {
  u32 e = 0;
  for (u32 rest = members; rest;) {
    u32 v = std::countr_zero(rest);
    rest &= rest - 1;
    e += static_cast<u32>(std::popcount(adjm[v] & members));
  }
  return e / 2;
}

// Scan Gray-code states lo..hi-1; subset(s) = s ^ (s >> 1), and consecutive
// states differ in exactly bit ctz(s + 1), so edges update incrementally.
Candidate scan_range(const std::vector<u32>& adjm, u64 lo, u64 hi) {
  Candidate best;
  u32 members = static_cast<u32>(lo ^ (lo >> 1));
  u32 edges = count_edges(adjm, members);
  for (u64 s = lo;;) {
    Candidate cur{edges, static_cast<u32>(std::popcount(members)), members};
    if (better(cur, best)) best = cur;
    if (++s >= hi) break;
    u32 bit = 1u << std::countr_zero(s);
    if (members & bit) {
      members ^= bit;
      edges -= static_cast<u32>(std::popcount(adjm[std::countr_zero(bit)] & members));
    } else {
      edges += static_cast<u32>(std::popcount(adjm[std::countr_zero(bit)] & members));
      members ^= bit;
    }
  }
  return best;
}

}  // namespace

OracleResult brute_force_densest(const Graph& g, u32 limit) {
  if (g.n == 0) throw EmptyGraphError("oracle on empty graph");
  if (g.n > limit)
    throw OracleSizeError("graph has " + std::to_string(g.n) + " vertices, oracle limit is " +
                          std::to_string(limit));

  const u32 n = static_cast<u32>(g.n);
  std::vector<u32> adjm(n, 0);
  for (u32 v = 0; v < n; ++v)
    for (u32 u : g.neighbors(v)) adjm[v] |= 1u << u;

  const u64 total = (u64(1) << n) - 1;  // Gray states 1..total, all nonempty subsets
  Candidate best;
  if (total < (u64(1) << 14) || max_threads() == 1) {
    best = scan_range(adjm, 1, total + 1);
  } else {
    const u64 nchunks = 256;
    const u64 step = (total + nchunks - 1) / nchunks;
    std::vector<Candidate> part(nchunks);
    parallel_for(0, nchunks, [&](u64 c) {
      u64 lo = 1 + c * step;
      u64 hi = std::min(total + 1, lo + step);
      if (lo < hi) part[c] = scan_range(adjm, lo, hi);
    }, 1);
    for (const auto& p : part)
      if (p.verts != 0 && better(p, best)) best = p;
  }

  OracleResult res;
  res.rho_star = Density{best.edges, best.verts}.reduced();
  for (u32 rest = best.mask; rest;) {
    u32 v = std::countr_zero(rest);
    rest &= rest - 1;
    res.witness.push_back(g.orig[v]);
  }
  return res;
}

bool check_degree_lemma(const Graph& g, u32 v) {
  if (v >= g.n) throw ParamError("vertex id out of range");
  Density rho = g.density();
  if (Density{g.degree(v), 1} >= rho) return true;
  if (g.n == 1) return true;
  Density without{g.m - g.degree(v), g.n - 1};
  return without > rho;
}

bool check_core_containment(const Graph& g, u32 k) {
  OracleResult res = brute_force_densest(g);
  CoreDecomposition dec = exact_coreness(g);
  for (u64 id : res.witness) {
    auto it = std::lower_bound(g.orig.begin(), g.orig.end(), id);
    u32 v = static_cast<u32>(it - g.orig.begin());
    if (dec.labels[v] < k) return false;
  }
  return true;
}

}  // namespace densegraph
