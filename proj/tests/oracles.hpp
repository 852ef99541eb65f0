#pragma once

// Slow, direct re-implementations used to cross-check the library. Nothing
// here calls into the code under test beyond plain value types.

#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "transfer/grid_lattice.hpp"

namespace oracle {

using transfer::GridPoint;
using transfer::GridShape;
using Pair = std::pair<GridPoint, GridPoint>;
using PairSet = std::set<Pair>;

inline std::vector<GridPoint> points(GridShape s) {
  std::vector<GridPoint> out;
  for (int i = 0; i <= s.m; ++i)
    for (int j = 0; j <= s.n; ++j) out.push_back({i, j});
  return out;
}

inline bool le(GridPoint a, GridPoint b) { return a.i <= b.i && a.j <= b.j; }
inline GridPoint glb(GridPoint a, GridPoint b) { return {std::min(a.i, b.i), std::min(a.j, b.j)}; }

inline std::vector<Pair> strict_pairs(GridShape s) {
  std::vector<Pair> out;
  for (auto a : points(s))
    for (auto b : points(s))
      if (le(a, b) && !(a == b)) out.push_back({a, b});
  return out;
}

inline bool is_transfer_system(GridShape s, const PairSet& r) {
  const auto pts = points(s);
  for (const auto& [k, h] : r)
    if (!le(k, h)) return false;
  for (auto h : pts)
    if (!r.count({h, h})) return false;
  for (const auto& [l, k] : r)
    for (const auto& [k2, h] : r)
      if (k == k2 && !r.count({l, h})) return false;
  for (const auto& [k, h] : r)
    for (auto m : pts)
      if (le(m, h) && !r.count({glb(k, m), m})) return false;
  return true;
}

inline bool is_saturated(GridShape s, const PairSet& r) {
  for (const auto& [l, h] : r)
    for (auto k : points(s))
      if (le(l, k) && le(k, h) && !r.count({k, h})) return false;
  return true;
}

/// Every transfer system on the shape, by trying all subsets of strict pairs.
inline std::vector<PairSet> all_transfer_systems(GridShape s) {
  const auto strict = strict_pairs(s);
  std::vector<PairSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << strict.size()); ++mask) {
    PairSet r;
    for (auto x : points(s)) r.insert({x, x});
    for (std::size_t b = 0; b < strict.size(); ++b)
      if ((mask >> b) & 1U) r.insert(strict[b]);
    if (is_transfer_system(s, r)) out.push_back(std::move(r));
  }
  return out;
}

/// Unit edges as (source, target) pairs.
inline std::vector<Pair> unit_edges(GridShape s) {
  std::vector<Pair> out;
  for (auto a : points(s)) {
    if (a.i < s.m) out.push_back({a, {a.i + 1, a.j}});
    if (a.j < s.n) out.push_back({a, {a.i, a.j + 1}});
  }
  return out;
}

/// Direct reading of the three cover conditions on a set of unit edges.
inline bool is_saturated_cover(GridShape s, const PairSet& e) {
  auto has = [&](GridPoint a, GridPoint b) { return e.count({a, b}) > 0; };
  for (int i = 1; i <= s.m; ++i)
    for (int j = 1; j <= s.n; ++j)
      if (has({i - 1, j}, {i, j}) && !has({i - 1, j - 1}, {i, j - 1})) return false;
  for (int j = 1; j <= s.n; ++j)
    for (int i = 1; i <= s.m; ++i)
      if (has({i, j - 1}, {i, j}) && !has({i - 1, j - 1}, {i - 1, j})) return false;
  for (int i = 1; i <= s.m; ++i)
    for (int j = 1; j <= s.n; ++j) {
      const int c = has({i - 1, j - 1}, {i, j - 1}) + has({i - 1, j}, {i, j}) + has({i - 1, j - 1}, {i - 1, j}) +
                    has({i, j - 1}, {i, j});
      if (c == 3) return false;
    }
  return true;
}

inline std::vector<PairSet> all_saturated_covers(GridShape s) {
  const auto edges = unit_edges(s);
  std::vector<PairSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
    PairSet e;
    for (std::size_t b = 0; b < edges.size(); ++b)
      if ((mask >> b) & 1U) e.insert(edges[b]);
    if (is_saturated_cover(s, e)) out.push_back(std::move(e));
  }
  return out;
}

/// Partitions of {0..l-1} into exactly k blocks, as block labels.
inline void for_each_partition(unsigned l, unsigned k, const std::function<void(const std::vector<unsigned>&)>& f) {
  std::vector<unsigned> label(l);
  std::function<void(unsigned, unsigned)> go = [&](unsigned pos, unsigned used) {
    if (pos == l) {
      if (used == k) f(label);
      return;
    }
    for (unsigned v = 0; v <= used && v < k; ++v) {
      label[pos] = v;
      go(pos + 1, std::max(used, v + 1));
    }
  };
  go(0, 0);
}

inline std::uint64_t stirling2(unsigned l, unsigned k) {
  std::uint64_t c = 0;
  for_each_partition(l, k, [&](const std::vector<unsigned>&) { ++c; });
  return c;
}

/// The I-modular relation computed with std::set arithmetic: pairs (d, e).
inline std::set<std::pair<std::uint64_t, std::uint64_t>> modular_pairs(std::uint64_t k, const std::set<std::uint64_t>& I) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t e = 1; e <= k; ++e) {
    if (k % e) continue;
    std::set<std::uint64_t> red;
    for (auto x : I) red.insert(x % e);
    for (std::uint64_t d = 1; d <= e; ++d) {
      if (e % d) continue;
      std::set<std::uint64_t> moved;
      for (auto x : red) moved.insert((x + d) % e);
      if (moved == red) out.insert({d, e});
    }
  }
  return out;
}

}  // namespace oracle
