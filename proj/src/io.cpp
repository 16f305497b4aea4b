#include "densegraph/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "densegraph/errors.hpp"

namespace densegraph {

namespace {

constexpr char kCacheMagic[8] = {'D', 'G', 'R', 'C', '0', '0', '0', '1'};

bool parse_u64(const char* b, const char* e, u64& out) {
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && p == e;
}

}  // namespace

Graph parse_edge_list(std::istream& in, const ParseOptions& opts) {
  std::vector<std::pair<u64, u64>> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t i = line.find_first_not_of(" \t");
    if (i == std::string::npos || line[i] == opts.comment) continue;

    const char* s = line.data();
    const char* end = s + line.size();
    u64 ids[2];
    int tok = 0;
    const char* p = s + i;
    while (p < end) {
      const char* q = p;
      while (q < end && *q != ' ' && *q != '\t') ++q;
      if (tok >= 2 || !parse_u64(p, q, ids[tok]))
        throw ParseError(lineno, "expected two non-negative integers, got \"" + line + "\"");
      ++tok;
      p = q;
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
    }
    if (tok != 2)
      throw ParseError(lineno, "expected two non-negative integers, got \"" + line + "\"");
    if (ids[0] == ids[1]) continue;  // self-loop
    edges.emplace_back(std::min(ids[0], ids[1]), std::max(ids[0], ids[1]));
  }
  if (in.bad()) throw IoError("read failure while parsing edge list");

  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.empty()) throw EmptyGraphError("no edges after removing self-loops and duplicates");

  Graph g;
  g.orig.reserve(edges.size());
  for (auto [a, b] : edges) {
    g.orig.push_back(a);
    g.orig.push_back(b);
  }
  std::sort(g.orig.begin(), g.orig.end());
  g.orig.erase(std::unique(g.orig.begin(), g.orig.end()), g.orig.end());
  g.n = g.orig.size();
  g.m = edges.size();

  auto dense = [&](u64 id) {
    return static_cast<u32>(std::lower_bound(g.orig.begin(), g.orig.end(), id) - g.orig.begin());
  };

  g.offs.assign(g.n + 1, 0);
  for (auto& [a, b] : edges) {
    a = dense(a);
    b = dense(b);
    ++g.offs[a + 1];
    ++g.offs[b + 1];
  }
  for (u64 v = 0; v < g.n; ++v) g.offs[v + 1] += g.offs[v];

  // One pass over (min,max) pairs in lexicographic order fills every
  // adjacency list in ascending order: for vertex v, all partners from
  // pairs (u,v) with u < v arrive before any from pairs (v,w) with w > v.
  g.adj.resize(2 * g.m);
  std::vector<u64> cur(g.offs.begin(), g.offs.end() - 1);
  for (auto [a, b] : edges) {
    g.adj[cur[a]++] = static_cast<u32>(b);
    g.adj[cur[b]++] = static_cast<u32>(a);
  }
  return g;
}

Graph parse_edge_list_file(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return parse_edge_list(in, opts);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (u64 v = 0; v < g.n; ++v)
    for (u32 u : g.neighbors(static_cast<u32>(v)))
      if (u > v) out << g.orig[v] << ' ' << g.orig[u] << '\n';
}

u64 fnv1a64(const void* data, std::size_t size, u64 seed) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  u64 h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

u64 hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char buf[1 << 16];
  u64 h = 14695981039346656037ULL;
  while (in) {
    in.read(buf, sizeof buf);
    h = fnv1a64(buf, static_cast<std::size_t>(in.gcount()), h);
  }
  if (in.bad()) throw IoError("read failure on " + path);
  return h;
}

bool is_cache_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[8];
  in.read(magic, 8);
  return in.gcount() == 8 && std::memcmp(magic, kCacheMagic, 8) == 0;
}

namespace {

void put_u64(std::ostream& out, u64 x) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(x >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

u64 get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (in.gcount() != 8) throw IoError("truncated cache file");
  u64 x = 0;
  for (int i = 0; i < 8; ++i) x |= u64(b[i]) << (8 * i);
  return x;
}

u64 payload_hash(const Graph& g) {
  u64 h = fnv1a64(g.orig.data(), g.orig.size() * sizeof(u64));
  h = fnv1a64(g.offs.data(), g.offs.size() * sizeof(u64), h);
  return fnv1a64(g.adj.data(), g.adj.size() * sizeof(u32), h);
}

}  // namespace

void write_cache(const Graph& g, const std::string& path, u64 source_hash) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(kCacheMagic, 8);
  put_u64(out, g.n);
  put_u64(out, g.m);
  put_u64(out, source_hash);
  put_u64(out, payload_hash(g));
  for (u64 x : g.orig) put_u64(out, x);
  for (u64 x : g.offs) put_u64(out, x);
  for (u32 x : g.adj) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(x >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
  }
  if (!out) throw IoError("write failure on " + path);
}

Graph read_cache(const std::string& path, u64* source_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (in.gcount() != 8 || std::memcmp(magic, kCacheMagic, 8) != 0)
    throw IoError(path + " is not a graph cache file");
  Graph g;
  g.n = get_u64(in);
  g.m = get_u64(in);
  u64 src = get_u64(in);
  u64 want = get_u64(in);
  g.orig.resize(g.n);
  for (auto& x : g.orig) x = get_u64(in);
  g.offs.resize(g.n + 1);
  for (auto& x : g.offs) x = get_u64(in);
  g.adj.resize(2 * g.m);
  for (auto& x : g.adj) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (in.gcount() != 4) throw IoError("truncated cache file");
    x = 0;
    for (int i = 0; i < 4; ++i) x |= u32(b[i]) << (8 * i);
  }
  if (payload_hash(g) != want) throw CacheHashError(path + ": cache payload corrupt");
  if (source_hash) *source_hash = src;
  return g;
}

}  // namespace densegraph
