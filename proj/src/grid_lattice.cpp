#include "transfer/grid_lattice.hpp"

#include <algorithm>

namespace transfer {

std::vector<GridEdge> cover_edges(GridShape shape) {
  std::vector<GridEdge> edges;
  edges.reserve(static_cast<std::size_t>(shape.m * (shape.n + 1) + shape.n * (shape.m + 1)));
  for (int column = 1; column <= shape.m; ++column)
    for (int h = 0; h <= shape.n; ++h) edges.push_back(GridEdge::horizontal(column, h));
  for (int row = 1; row <= shape.n; ++row)
    for (int d = 0; d <= shape.m; ++d) edges.push_back(GridEdge::vertical(row, d));
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<GridPoint> grid_points(GridShape shape) {
  std::vector<GridPoint> pts;
  pts.reserve(shape.point_count());
  for (std::size_t idx = 0; idx < shape.point_count(); ++idx) pts.push_back(shape.point(idx));
  return pts;
}

std::ostream& operator<<(std::ostream& os, GridPoint x) {
  return os << '(' << x.i << ',' << x.j << ')';
}

std::ostream& operator<<(std::ostream& os, GridShape s) {
  return os << '[' << s.m << "]x[" << s.n << ']';
}

std::ostream& operator<<(std::ostream& os, const GridEdge& e) {
  return os << e.source << "->" << e.target;
}

}  // namespace transfer
