#pragma once

#include <iosfwd>
#include <string>

#include "densegraph/graph.hpp"

namespace densegraph {

struct ParseOptions {
  char comment = '#';
};

// Whitespace-separated pairs of non-negative integer ids, one edge per
// line. Self-loops and duplicate edges are dropped; vertices left with
// degree zero do not appear in the graph. Throws ParseError (with line
// number) on malformed lines and EmptyGraphError if no edge survives.
Graph parse_edge_list(std::istream& in, const ParseOptions& opts = {});
Graph parse_edge_list_file(const std::string& path, const ParseOptions& opts = {});

// Canonical text form: one "u v" line per edge with u < v, ascending.
void write_edge_list(const Graph& g, std::ostream& out);

// FNV-1a over raw bytes; keys a cache file to its source text.
u64 fnv1a64(const void* data, std::size_t size, u64 seed = 14695981039346656037ULL);
u64 hash_file(const std::string& path);

// Little-endian binary snapshot of the CSR arrays plus the source hash.
bool is_cache_file(const std::string& path);
void write_cache(const Graph& g, const std::string& path, u64 source_hash);
Graph read_cache(const std::string& path, u64* source_hash = nullptr);

}  // namespace densegraph
