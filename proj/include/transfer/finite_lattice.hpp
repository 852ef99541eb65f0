#pragma once

// Small finite lattices (at most 64 elements) and the relation algebra shared
// by grid and divisor-lattice transfer systems.
//
// A relation is stored row-wise: rows[h] has bit k set iff k -> h. Elements
// are indexed in the lattice's canonical order (lexicographic for grids,
// ascending for divisors).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "transfer/grid_lattice.hpp"

namespace transfer {

using Mask = std::uint64_t;
inline constexpr std::size_t kMaxLatticeSize = 64;

constexpr Mask bit(std::size_t i) { return Mask{1} << i; }

/// Calls f(index) for each set bit, lowest first.
template <typename F>
void for_each_bit(Mask m, F&& f) {
  while (m) {
    f(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
}

class FiniteLattice {
 public:
  /// Throws std::length_error when the grid has more than 64 points.
  static FiniteLattice grid(GridShape shape);
  /// Divisors of k in ascending order, ordered by divisibility.
  static FiniteLattice divisors(std::uint64_t k);

  std::size_t size() const { return size_; }
  bool leq(std::size_t a, std::size_t b) const { return (down_[b] >> a) & 1U; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * size_ + b]; }
  Mask down_set(std::size_t a) const { return down_[a]; }
  Mask up_set(std::size_t a) const { return up_[a]; }
  bool is_cover(std::size_t a, std::size_t b) const;
  Mask all() const { return size_ == 64 ? ~Mask{0} : bit(size_) - 1; }

 private:
  FiniteLattice() = default;
  void finish();

  std::size_t size_ = 0;
  std::vector<Mask> down_;
  std::vector<Mask> up_;
  std::vector<std::uint8_t> meet_;
};

/// Shared, cached lattice for a grid shape.
std::shared_ptr<const FiniteLattice> grid_lattice(GridShape shape);

using RelationRows = std::vector<Mask>;

namespace axioms {
bool refines_order(const FiniteLattice& lat, const RelationRows& rows);
bool reflexive(const FiniteLattice& lat, const RelationRows& rows);
bool transitive(const FiniteLattice& lat, const RelationRows& rows);
bool restriction_closed(const FiniteLattice& lat, const RelationRows& rows);
/// L <= K <= H and L -> H imply K -> H.
bool saturated(const FiniteLattice& lat, const RelationRows& rows);
}  // namespace axioms

/// Minimal transfer system containing `rows`: reflexive pairs are added, then
/// restriction closure and transitive closure alternate until a fixed point.
/// Precondition: rows refine the lattice order.
RelationRows close_transfer(const FiniteLattice& lat, RelationRows rows);

RelationRows identity_rows(const FiniteLattice& lat);
RelationRows order_rows(const FiniteLattice& lat);

}  // namespace transfer
