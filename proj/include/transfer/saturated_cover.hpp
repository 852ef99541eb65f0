#pragma once

// Saturated covers: the unit-edge skeletons of saturated transfer systems on
// [m] x [n], their horizontal/vertical codes, and the classification map c
// with the fiber collapse/expand bijections behind the counting recursion.

#include <cstdint>
#include <functional>
#include <span>
#include <tuple>
#include <vector>

#include "transfer/finite_lattice.hpp"
#include "transfer/grid_lattice.hpp"
#include "transfer/transfer_system.hpp"

namespace transfer {

/// Mask with bits 0..count-1 set.
constexpr Mask low_bits(int count) {
  return count >= 64 ? ~Mask{0} : (Mask{1} << count) - 1;
}

/// Any subset of the grid's unit edges. Horizontal edges are kept per column
/// (bit = height), vertical edges per row (bit = depth).
class EdgeSet {
 public:
  explicit EdgeSet(GridShape shape);
  /// Throws std::invalid_argument for edges not in the grid.
  static EdgeSet from_edges(GridShape shape, std::span<const GridEdge> edges);
  static EdgeSet full(GridShape shape);

  GridShape shape() const { return shape_; }

  bool has_horizontal(int column, int height) const { return (columns_[column - 1] >> height) & 1U; }
  bool has_vertical(int row, int depth) const { return (rows_[row - 1] >> depth) & 1U; }
  void set_horizontal(int column, int height, bool on = true);
  void set_vertical(int row, int depth, bool on = true);

  Mask column_mask(int column) const { return columns_[column - 1]; }
  Mask row_mask(int row) const { return rows_[row - 1]; }
  void set_column_mask(int column, Mask mask) { columns_[column - 1] = mask & low_bits(shape_.n + 1); }
  void set_row_mask(int row, Mask mask) { rows_[row - 1] = mask & low_bits(shape_.m + 1); }

  bool contains(const GridEdge& e) const;
  std::size_t size() const;
  std::vector<GridEdge> edges() const;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;
  friend bool operator<(const EdgeSet& a, const EdgeSet& b) {
    return std::tie(a.columns_, a.rows_) < std::tie(b.columns_, b.rows_);
  }

 private:
  GridShape shape_;
  std::vector<Mask> columns_;
  std::vector<Mask> rows_;
};

struct CoverConditions {
  bool horizontal_prefix = false;  // (1) column edges fill heights from 0 up
  bool vertical_prefix = false;    // (2) row edges fill depths from 0 out
  bool squares = false;            // (3) no unit square has exactly three edges

  bool ok() const { return horizontal_prefix && vertical_prefix && squares; }
};

CoverConditions check_cover_conditions(const EdgeSet& edges);
bool is_saturated_cover(const EdgeSet& edges);

class SaturatedCover {
 public:
  /// Throws std::invalid_argument if any cover condition fails.
  static SaturatedCover from_edges(EdgeSet edges);
  static SaturatedCover empty(GridShape shape) { return SaturatedCover(EdgeSet(shape)); }
  static SaturatedCover full(GridShape shape) { return SaturatedCover(EdgeSet::full(shape)); }

  GridShape shape() const { return edges_.shape(); }
  const EdgeSet& edges() const { return edges_; }

  friend bool operator==(const SaturatedCover&, const SaturatedCover&) = default;
  friend bool operator<(const SaturatedCover& a, const SaturatedCover& b) { return a.edges_ < b.edges_; }

 private:
  explicit SaturatedCover(EdgeSet e) : edges_(std::move(e)) {}
  EdgeSet edges_;
};

/// a[i-1] = number of horizontal edges in column i, b[j-1] = number of
/// vertical edges in row j.
struct CodePair {
  std::vector<int> a;
  std::vector<int> b;

  friend auto operator<=>(const CodePair&, const CodePair&) = default;
};

CodePair codes_of(const SaturatedCover& s);
/// Range checks plus b_{a_i} <= i and a_{b_j} <= j wherever the index is in range.
bool is_compatible(const CodePair& c, GridShape shape);
/// Throws std::invalid_argument for incompatible codes.
SaturatedCover cover_from_codes(const CodePair& c, GridShape shape);

TransferSystem cover_to_system(const SaturatedCover& s);
/// Throws std::invalid_argument for a non-saturated system.
SaturatedCover system_to_cover(const TransferSystem& t);

/// Subset of {0, ..., m} produced by the classification map.
class ClassLabel {
 public:
  ClassLabel(int m, Mask members);
  static ClassLabel from_elements(int m, std::span<const int> elements);

  int m() const { return m_; }
  Mask mask() const { return members_; }
  bool contains(int i) const { return (members_ >> i) & 1U; }
  int size() const { return std::popcount(members_); }
  bool is_full() const { return members_ == low_bits(m_ + 1); }
  std::vector<int> elements() const;

  friend bool operator==(const ClassLabel&, const ClassLabel&) = default;

 private:
  int m_;
  Mask members_;
};

/// c(S) = {0..k} u {i > k+1 : top horizontal edge of column i absent}, where
/// (k, n-1) -> (k, n) is the rightmost vertical edge of the top row (k = -1
/// when there is none). Throws std::invalid_argument when n = 0.
ClassLabel classify(const SaturatedCover& s);

/// Drops the top row and, for a proper label, merges each column i > k+1
/// outside the label. The result lives on [|A|] x [n-1], or [m] x [n-1] when
/// the label is full. Throws std::invalid_argument on a fiber mismatch and
/// std::logic_error if a merged column has differing vertical boundaries.
SaturatedCover collapse(const SaturatedCover& s, const ClassLabel& label);
SaturatedCover collapse(const SaturatedCover& s);

/// Inverse of collapse: rebuilds the cover on `target` lying in the fiber of
/// `label`. Throws std::invalid_argument on a shape mismatch.
SaturatedCover expand(const SaturatedCover& t, const ClassLabel& label, GridShape target);

/// Every compatible code pair, a lexicographic first, then b.
void for_each_code_pair(GridShape shape, const std::function<void(const CodePair&)>& visit);
void for_each_saturated_cover(GridShape shape, const std::function<void(const SaturatedCover&)>& visit);
std::vector<SaturatedCover> enumerate_saturated_covers(GridShape shape);

/// Number of compatible code pairs by visiting each one.
std::uint64_t count_code_pairs(GridShape shape);
/// Same count, summing over horizontal codes the product of the admissible
/// choices for each b_j (which are independent once a is fixed). Throws
/// std::overflow_error if the count does not fit in 64 bits.
std::uint64_t count_code_pairs_factored(GridShape shape);

}  // namespace transfer
