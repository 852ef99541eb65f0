#include "transfer/saturated_cover.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace transfer {

namespace {

bool is_prefix(Mask m) { return (m & (m + 1)) == 0; }

}  // namespace

EdgeSet::EdgeSet(GridShape shape)
    : shape_(shape),
      columns_(static_cast<std::size_t>(shape.m), 0),
      rows_(static_cast<std::size_t>(shape.n), 0) {
  if (shape.m < 0 || shape.n < 0) throw std::invalid_argument("grid shape must be non-negative");
  if (shape.m > 62 || shape.n > 62) throw std::length_error("edge sets limited to 62 columns and rows");
}

EdgeSet EdgeSet::from_edges(GridShape shape, std::span<const GridEdge> edges) {
  EdgeSet s(shape);
  for (const auto& e : edges) {
    if (!shape.contains(e.source) || !shape.contains(e.target) || !is_cover_pair(e.source, e.target)) {
      std::ostringstream msg;
      msg << "edge " << e << " is not a unit edge of " << shape;
      throw std::invalid_argument(msg.str());
    }
    if (e.source.j == e.target.j)
      s.set_horizontal(e.target.i, e.target.j);
    else
      s.set_vertical(e.target.j, e.target.i);
  }
  return s;
}

EdgeSet EdgeSet::full(GridShape shape) {
  EdgeSet s(shape);
  for (auto& c : s.columns_) c = low_bits(shape.n + 1);
  for (auto& r : s.rows_) r = low_bits(shape.m + 1);
  return s;
}

void EdgeSet::set_horizontal(int column, int height, bool on) {
  Mask& c = columns_[column - 1];
  c = on ? (c | bit(height)) : (c & ~bit(height));
}

void EdgeSet::set_vertical(int row, int depth, bool on) {
  Mask& r = rows_[row - 1];
  r = on ? (r | bit(depth)) : (r & ~bit(depth));
}

bool EdgeSet::contains(const GridEdge& e) const {
  if (!shape_.contains(e.source) || !shape_.contains(e.target) || !is_cover_pair(e.source, e.target))
    return false;
  if (e.source.j == e.target.j) return has_horizontal(e.target.i, e.target.j);
  return has_vertical(e.target.j, e.target.i);
}

std::size_t EdgeSet::size() const {
  std::size_t total = 0;
  for (Mask c : columns_) total += static_cast<std::size_t>(std::popcount(c));
  for (Mask r : rows_) total += static_cast<std::size_t>(std::popcount(r));
  return total;
}

std::vector<GridEdge> EdgeSet::edges() const {
  std::vector<GridEdge> out;
  for (int column = 1; column <= shape_.m; ++column)
    for_each_bit(column_mask(column), [&](std::size_t h) {
      out.push_back(GridEdge::horizontal(column, static_cast<int>(h)));
    });
  for (int row = 1; row <= shape_.n; ++row)
    for_each_bit(row_mask(row), [&](std::size_t d) {
      out.push_back(GridEdge::vertical(row, static_cast<int>(d)));
    });
  std::sort(out.begin(), out.end());
  return out;
}

CoverConditions check_cover_conditions(const EdgeSet& s) {
  const GridShape shape = s.shape();
  CoverConditions c;
  c.horizontal_prefix = true;
  for (int column = 1; column <= shape.m; ++column)
    c.horizontal_prefix = c.horizontal_prefix && is_prefix(s.column_mask(column));
  c.vertical_prefix = true;
  for (int row = 1; row <= shape.n; ++row)
    c.vertical_prefix = c.vertical_prefix && is_prefix(s.row_mask(row));
  c.squares = true;
  for (int column = 1; column <= shape.m && c.squares; ++column) {
    for (int row = 1; row <= shape.n; ++row) {
      int present = s.has_horizontal(column, row - 1) + s.has_horizontal(column, row) +
                    s.has_vertical(row, column - 1) + s.has_vertical(row, column);
      if (present == 3) {
        c.squares = false;
        break;
      }
    }
  }
  return c;
}

bool is_saturated_cover(const EdgeSet& edges) { return check_cover_conditions(edges).ok(); }

SaturatedCover SaturatedCover::from_edges(EdgeSet edges) {
  CoverConditions c = check_cover_conditions(edges);
  if (!c.horizontal_prefix) throw std::invalid_argument("not a saturated cover: horizontal edges are not bottom-aligned");
  if (!c.vertical_prefix) throw std::invalid_argument("not a saturated cover: vertical edges are not left-aligned");
  if (!c.squares) throw std::invalid_argument("not a saturated cover: a unit square has exactly three edges");
  return SaturatedCover(std::move(edges));
}

CodePair codes_of(const SaturatedCover& s) {
  const GridShape shape = s.shape();
  CodePair c;
  for (int column = 1; column <= shape.m; ++column) c.a.push_back(std::popcount(s.edges().column_mask(column)));
  for (int row = 1; row <= shape.n; ++row) c.b.push_back(std::popcount(s.edges().row_mask(row)));
  return c;
}

bool is_compatible(const CodePair& c, GridShape shape) {
  const int m = shape.m, n = shape.n;
  if (static_cast<int>(c.a.size()) != m || static_cast<int>(c.b.size()) != n) return false;
  for (int v : c.a)
    if (v < 0 || v > n + 1) return false;
  for (int v : c.b)
    if (v < 0 || v > m + 1) return false;
  for (int i = 1; i <= m; ++i) {
    int j = c.a[i - 1];
    if (j >= 1 && j <= n && c.b[j - 1] > i) return false;
  }
  for (int j = 1; j <= n; ++j) {
    int i = c.b[j - 1];
    if (i >= 1 && i <= m && c.a[i - 1] > j) return false;
  }
  return true;
}

SaturatedCover cover_from_codes(const CodePair& c, GridShape shape) {
  if (!is_compatible(c, shape)) throw std::invalid_argument("codes are not compatible");
  EdgeSet s(shape);
  for (int column = 1; column <= shape.m; ++column) s.set_column_mask(column, low_bits(c.a[column - 1]));
  for (int row = 1; row <= shape.n; ++row) s.set_row_mask(row, low_bits(c.b[row - 1]));
  return SaturatedCover::from_edges(std::move(s));
}

TransferSystem cover_to_system(const SaturatedCover& s) {
  auto edges = s.edges().edges();
  return generate(Relation::from_edges(s.shape(), edges));
}

SaturatedCover system_to_cover(const TransferSystem& t) {
  if (!is_saturated(t)) throw std::invalid_argument("transfer system is not saturated");
  auto edges = cover_relations(t);
  return SaturatedCover::from_edges(EdgeSet::from_edges(t.shape(), edges));
}

ClassLabel::ClassLabel(int m, Mask members) : m_(m), members_(members) {
  if (m < 0 || m > 62) throw std::invalid_argument("label universe must be {0..m} with 0 <= m <= 62");
  if (members & ~low_bits(m + 1)) throw std::invalid_argument("label element outside {0..m}");
}

ClassLabel ClassLabel::from_elements(int m, std::span<const int> elements) {
  Mask mask = 0;
  for (int e : elements) {
    if (e < 0 || e > m) throw std::invalid_argument("label element outside {0..m}");
    mask |= bit(static_cast<std::size_t>(e));
  }
  return ClassLabel(m, mask);
}

std::vector<int> ClassLabel::elements() const {
  std::vector<int> out;
  for_each_bit(members_, [&](std::size_t i) { out.push_back(static_cast<int>(i)); });
  return out;
}

ClassLabel classify(const SaturatedCover& s) {
  const GridShape shape = s.shape();
  if (shape.n < 1) throw std::invalid_argument("classification needs at least one row");
  const int k = std::popcount(s.edges().row_mask(shape.n)) - 1;
  Mask members = low_bits(k + 1);
  for (int i = k + 2; i <= shape.m; ++i)
    if (!s.edges().has_horizontal(i, shape.n)) members |= bit(static_cast<std::size_t>(i));
  return ClassLabel(shape.m, members);
}

namespace {

// Smallest element of {0..m} outside a proper label.
int first_gap(const ClassLabel& label) { return std::countr_one(label.mask()); }

// Columns i > k+1 outside the label; these are merged away by collapse.
std::vector<int> merged_columns(const ClassLabel& label) {
  std::vector<int> cols;
  for (int i = first_gap(label) + 1; i <= label.m(); ++i)
    if (!label.contains(i)) cols.push_back(i);
  return cols;
}

}  // namespace

SaturatedCover collapse(const SaturatedCover& s, const ClassLabel& label) {
  if (classify(s) != label) throw std::invalid_argument("cover is not in the fiber of the given label");
  const GridShape shape = s.shape();
  const int n = shape.n;
  const EdgeSet& e = s.edges();

  if (label.is_full()) {
    EdgeSet out(GridShape{shape.m, n - 1});
    for (int column = 1; column <= shape.m; ++column) out.set_column_mask(column, e.column_mask(column));
    for (int row = 1; row < n; ++row) out.set_row_mask(row, e.row_mask(row));
    return SaturatedCover::from_edges(std::move(out));
  }

  const std::vector<int> merged = merged_columns(label);
  for (int column : merged) {
    for (int row = 1; row < n; ++row) {
      if (e.has_vertical(row, column - 1) != e.has_vertical(row, column)) {
        std::ostringstream msg;
        msg << "collapse: column " << column << " has differing vertical boundaries in row " << row;
        throw std::logic_error(msg.str());
      }
    }
  }

  // Vertex d of the source grid lands on d minus the merged columns at or left of d.
  auto image = [&](int d) {
    return d - static_cast<int>(std::upper_bound(merged.begin(), merged.end(), d) - merged.begin());
  };

  EdgeSet out(GridShape{label.size(), n - 1});
  int next = 1;
  for (int column = 1; column <= shape.m; ++column) {
    if (std::binary_search(merged.begin(), merged.end(), column)) continue;
    out.set_column_mask(next++, e.column_mask(column));
  }
  for (int row = 1; row < n; ++row) {
    for_each_bit(e.row_mask(row), [&](std::size_t d) {
      out.set_vertical(row, image(static_cast<int>(d)));
    });
  }
  return SaturatedCover::from_edges(std::move(out));
}

SaturatedCover collapse(const SaturatedCover& s) { return collapse(s, classify(s)); }

SaturatedCover expand(const SaturatedCover& t, const ClassLabel& label, GridShape target) {
  const int m = target.m, n = target.n;
  if (n < 1) throw std::invalid_argument("expand: target needs at least one row");
  if (label.m() != m) throw std::invalid_argument("expand: label universe does not match target");
  const GridShape expected{label.is_full() ? m : label.size(), n - 1};
  if (t.shape() != expected) {
    std::ostringstream msg;
    msg << "expand: cover on " << t.shape() << " does not match " << expected;
    throw std::invalid_argument(msg.str());
  }
  const EdgeSet& src = t.edges();
  EdgeSet out(target);

  if (label.is_full()) {
    for (int column = 1; column <= m; ++column) {
      Mask c = src.column_mask(column);
      if ((c >> (n - 1)) & 1U) c |= bit(static_cast<std::size_t>(n));
      out.set_column_mask(column, c);
    }
    for (int row = 1; row < n; ++row) out.set_row_mask(row, src.row_mask(row));
    out.set_row_mask(n, low_bits(m + 1));
  } else {
    const int k = first_gap(label) - 1;
    const std::vector<int> merged = merged_columns(label);
    auto image = [&](int d) {
      return d - static_cast<int>(std::upper_bound(merged.begin(), merged.end(), d) - merged.begin());
    };
    int next = 1;
    for (int column = 1; column <= m; ++column) {
      if (std::binary_search(merged.begin(), merged.end(), column)) {
        out.set_column_mask(column, low_bits(n + 1));
        continue;
      }
      Mask c = src.column_mask(next++);
      if (column <= k && ((c >> (n - 1)) & 1U)) c |= bit(static_cast<std::size_t>(n));
      out.set_column_mask(column, c);
    }
    for (int row = 1; row < n; ++row)
      for (int d = 0; d <= m; ++d)
        if (src.has_vertical(row, image(d))) out.set_vertical(row, d);
    out.set_row_mask(n, low_bits(k + 1));
  }

  SaturatedCover result = SaturatedCover::from_edges(std::move(out));
  if (classify(result) != label) throw std::logic_error("expand: result left the fiber of the label");
  return result;
}

namespace {

// Admissible values of each b_j once the horizontal code a is fixed.
std::vector<std::vector<int>> vertical_choices(const std::vector<int>& a, GridShape shape) {
  const int m = shape.m, n = shape.n;
  std::vector<std::vector<int>> choices(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    int cap = m + 1;
    for (int i = 1; i <= m; ++i)
      if (a[i - 1] == j) {
        cap = i;
        break;
      }
    for (int v = 0; v <= cap; ++v)
      if (v == 0 || v == m + 1 || a[v - 1] <= j) choices[j - 1].push_back(v);
  }
  return choices;
}

// Odometer over a, first coordinate most significant.
template <typename F>
void for_each_horizontal_code(GridShape shape, F&& f) {
  std::vector<int> a(static_cast<std::size_t>(shape.m), 0);
  while (true) {
    f(a);
    int pos = shape.m - 1;
    while (pos >= 0 && a[pos] == shape.n + 1) a[pos--] = 0;
    if (pos < 0) return;
    ++a[pos];
  }
}

}  // namespace

void for_each_code_pair(GridShape shape, const std::function<void(const CodePair&)>& visit) {
  if (shape.m < 0 || shape.n < 0) throw std::invalid_argument("grid shape must be non-negative");
  CodePair c;
  for_each_horizontal_code(shape, [&](const std::vector<int>& a) {
    auto choices = vertical_choices(a, shape);
    for (const auto& ch : choices)
      if (ch.empty()) return;
    c.a = a;
    std::vector<std::size_t> pick(choices.size(), 0);
    c.b.assign(choices.size(), 0);
    while (true) {
      for (std::size_t j = 0; j < choices.size(); ++j) c.b[j] = choices[j][pick[j]];
      visit(c);
      int pos = static_cast<int>(choices.size()) - 1;
      while (pos >= 0 && pick[pos] + 1 == choices[pos].size()) pick[pos--] = 0;
      if (pos < 0) break;
      ++pick[pos];
    }
  });
}

void for_each_saturated_cover(GridShape shape, const std::function<void(const SaturatedCover&)>& visit) {
  for_each_code_pair(shape, [&](const CodePair& c) { visit(cover_from_codes(c, shape)); });
}

std::vector<SaturatedCover> enumerate_saturated_covers(GridShape shape) {
  std::vector<SaturatedCover> out;
  for_each_saturated_cover(shape, [&](const SaturatedCover& s) { out.push_back(s); });
  return out;
}

std::uint64_t count_code_pairs(GridShape shape) {
  std::uint64_t count = 0;
  for_each_code_pair(shape, [&](const CodePair&) { ++count; });
  return count;
}

std::uint64_t count_code_pairs_factored(GridShape shape) {
  if (shape.m < 0 || shape.n < 0) throw std::invalid_argument("grid shape must be non-negative");
  const int m = shape.m, n = shape.n;
  std::vector<int> cap(static_cast<std::size_t>(n) + 2);
  std::uint64_t total = 0;
  for_each_horizontal_code(shape, [&](const std::vector<int>& a) {
    std::fill(cap.begin(), cap.end(), m + 1);
    for (int i = m; i >= 1; --i) cap[a[i - 1]] = i;
    std::uint64_t product = 1;
    for (int j = 1; j <= n && product != 0; ++j) {
      std::uint64_t choices = 0;
      for (int v = 0; v <= cap[j]; ++v)
        if (v == 0 || v == m + 1 || a[v - 1] <= j) ++choices;
      if (__builtin_mul_overflow(product, choices, &product))
        throw std::overflow_error("code-pair count exceeds 64 bits");
    }
    if (__builtin_add_overflow(total, product, &total))
      throw std::overflow_error("code-pair count exceeds 64 bits");
  });
  return total;
}

}  // namespace transfer
