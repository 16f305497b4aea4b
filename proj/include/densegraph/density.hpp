#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "densegraph/errors.hpp"

namespace densegraph {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Exact edge-per-vertex ratio of a nonempty vertex set. Kept as an
// unreduced pair; all comparisons cross-multiply in 128 bits.
struct Density {
  u64 edges = 0;
  u64 verts = 1;

  double value() const { return static_cast<double>(edges) / static_cast<double>(verts); }

  Density reduced() const {
    u64 g = std::gcd(edges == 0 ? verts : edges, verts);
    return {edges / g, verts / g};
  }

  friend bool operator==(const Density& a, const Density& b) {
    return u128(a.edges) * b.verts == u128(b.edges) * a.verts;
  }
  friend bool operator!=(const Density& a, const Density& b) { return !(a == b); }
  friend bool operator<(const Density& a, const Density& b) {
    return u128(a.edges) * b.verts < u128(b.edges) * a.verts;
  }
  friend bool operator>(const Density& a, const Density& b) { return b < a; }
  friend bool operator<=(const Density& a, const Density& b) { return !(b < a); }
  friend bool operator>=(const Density& a, const Density& b) { return !(a < b); }
};

inline u64 ceil_div(u64 a, u64 b) {
  if (b == 0) throw ParamError("division by zero");
  return a / b + (a % b != 0);
}

// Ceiling of (a.edges * num) / (a.verts * den) without overflow.
inline u64 ceil_scaled(const Density& a, u64 num, u64 den) {
  if (den == 0 || a.verts == 0) throw ParamError("division by zero");
  u128 p = u128(a.edges) * num;
  u128 q = u128(a.verts) * den;
  return static_cast<u64>(p / q + (p % q != 0));
}

// Fixed 6-decimal rendering with ties rounded to even, computed from the
// exact rational so output is identical across platforms and thread counts.
inline std::string format_fixed6(const Density& d) {
  if (d.verts == 0) throw ParamError("density with zero vertices");
  u128 scaled = u128(d.edges) * 1000000u;
  u128 q = scaled / d.verts;
  u128 r = scaled % d.verts;
  u128 twice = r * 2;
  if (twice > d.verts || (twice == d.verts && (q & 1)))
    ++q;
  u64 whole = static_cast<u64>(q / 1000000u);
  u64 frac = static_cast<u64>(q % 1000000u);
  std::string f = std::to_string(frac);
  return std::to_string(whole) + "." + std::string(6 - f.size(), '0') + f;
}

}  // namespace densegraph
