#pragma once

// Subgroup lattice of C_{p^m q^n}, modelled as the grid [m] x [n].
//
// The subgroup C_{p^i q^j} is the point (i, j). Cover relations are the
// unit edges of the grid. Column i (1 <= i <= m) holds the horizontal edges
// (i-1, h) -> (i, h); row j (1 <= j <= n) holds the vertical edges
// (d, j-1) -> (d, j).

#include <compare>
#include <cstddef>
#include <ostream>
#include <vector>

namespace transfer {

struct GridPoint {
  int i = 0;
  int j = 0;

  friend constexpr auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

struct GridShape {
  int m = 0;
  int n = 0;

  constexpr std::size_t point_count() const {
    return static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(n + 1);
  }
  constexpr bool contains(GridPoint x) const {
    return x.i >= 0 && x.i <= m && x.j >= 0 && x.j <= n;
  }
  /// Lexicographic index of a point: (i, then j).
  constexpr std::size_t index(GridPoint x) const {
    return static_cast<std::size_t>(x.i) * static_cast<std::size_t>(n + 1) +
           static_cast<std::size_t>(x.j);
  }
  constexpr GridPoint point(std::size_t idx) const {
    return {static_cast<int>(idx / static_cast<std::size_t>(n + 1)),
            static_cast<int>(idx % static_cast<std::size_t>(n + 1))};
  }
  constexpr GridPoint top() const { return {m, n}; }

  friend constexpr bool operator==(const GridShape&, const GridShape&) = default;
};

enum class Orientation { horizontal, vertical };

struct GridEdge {
  GridPoint source;
  GridPoint target;
  Orientation orientation = Orientation::horizontal;

  /// Horizontal edge of column `column` at height `height`.
  static constexpr GridEdge horizontal(int column, int height) {
    return {{column - 1, height}, {column, height}, Orientation::horizontal};
  }
  /// Vertical edge of row `row` at depth `depth`.
  static constexpr GridEdge vertical(int row, int depth) {
    return {{depth, row - 1}, {depth, row}, Orientation::vertical};
  }

  friend constexpr auto operator<=>(const GridEdge& a, const GridEdge& b) {
    if (auto c = a.source <=> b.source; c != 0) return c;
    return a.target <=> b.target;
  }
  friend constexpr bool operator==(const GridEdge& a, const GridEdge& b) {
    return a.source == b.source && a.target == b.target;
  }
};

constexpr bool leq(GridPoint x, GridPoint y) { return x.i <= y.i && x.j <= y.j; }

/// Subgroup intersection: componentwise minimum.
constexpr GridPoint meet(GridPoint x, GridPoint y) {
  return {x.i < y.i ? x.i : y.i, x.j < y.j ? x.j : y.j};
}

constexpr GridPoint join(GridPoint x, GridPoint y) {
  return {x.i > y.i ? x.i : y.i, x.j > y.j ? x.j : y.j};
}

/// True iff x < y with nothing strictly between them.
constexpr bool is_cover_pair(GridPoint x, GridPoint y) {
  return (x.i + 1 == y.i && x.j == y.j) || (x.i == y.i && x.j + 1 == y.j);
}

/// All m(n+1) horizontal and n(m+1) vertical edges, sorted by (source, target).
std::vector<GridEdge> cover_edges(GridShape shape);

/// Points of the shape in lexicographic order.
std::vector<GridPoint> grid_points(GridShape shape);

std::ostream& operator<<(std::ostream& os, GridPoint x);
std::ostream& operator<<(std::ostream& os, GridShape s);
std::ostream& operator<<(std::ostream& os, const GridEdge& e);

}  // namespace transfer
