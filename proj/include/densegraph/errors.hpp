#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace densegraph {

// Malformed input text; carries the 1-based line number.
struct ParseError : std::runtime_error {
  std::size_t line;
  ParseError(std::size_t line_, const std::string& what_)
      : std::runtime_error("parse error at line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
};

struct EmptyGraphError : std::runtime_error {
  explicit EmptyGraphError(const std::string& what_) : std::runtime_error(what_) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what_) : std::runtime_error(what_) {}
};

struct ParamError : std::runtime_error {
  explicit ParamError(const std::string& what_) : std::runtime_error(what_) {}
};

// Internal contract breach (exit code 4 at the CLI boundary).
struct InvariantError : std::runtime_error {
  explicit InvariantError(const std::string& what_) : std::runtime_error(what_) {}
};

// Oracle asked to enumerate a graph above its subset limit (exit code 5).
struct OracleSizeError : std::runtime_error {
  explicit OracleSizeError(const std::string& what_) : std::runtime_error(what_) {}
};

// Binary cache does not match its source text or is corrupt (exit code 6).
struct CacheHashError : std::runtime_error {
  explicit CacheHashError(const std::string& what_) : std::runtime_error(what_) {}
};

}  // namespace densegraph
