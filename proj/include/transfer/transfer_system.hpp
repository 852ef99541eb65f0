#pragma once

// Transfer systems on the grid [m] x [n] (subgroups of C_{p^m q^n}).

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "transfer/errors.hpp"
#include "transfer/finite_lattice.hpp"
#include "transfer/grid_lattice.hpp"

namespace transfer {

using GridPair = std::pair<GridPoint, GridPoint>;  // (K, H) meaning K -> H

/// A set of order-compatible pairs on a grid.
class Relation {
 public:
  explicit Relation(GridShape shape);

  /// Rows indexed by target; throws std::invalid_argument if a pair is not
  /// order-compatible.
  static Relation from_rows(GridShape shape, RelationRows rows);
  static Relation from_pairs(GridShape shape, std::span<const GridPair> pairs);
  static Relation from_edges(GridShape shape, std::span<const GridEdge> edges);

  GridShape shape() const { return shape_; }
  const FiniteLattice& lattice() const { return *lattice_; }
  const RelationRows& rows() const { return rows_; }

  /// Throws std::invalid_argument unless k <= h inside the shape.
  void add(GridPoint k, GridPoint h);
  bool contains(GridPoint k, GridPoint h) const;

  /// Pairs sorted lexicographically by (K, H).
  std::vector<GridPair> pairs(bool include_reflexive = false) const;

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.shape_ == b.shape_ && a.rows_ == b.rows_;
  }

 private:
  GridShape shape_;
  std::shared_ptr<const FiniteLattice> lattice_;
  RelationRows rows_;
};

/// A relation satisfying refinement, reflexivity, transitivity and
/// restriction closure. Conjugation closure is vacuous for cyclic groups.
class TransferSystem {
 public:
  static TransferSystem trivial(GridShape shape);
  static TransferSystem complete(GridShape shape);
  /// Throws std::invalid_argument naming the first failed axiom.
  static TransferSystem from_relation(Relation r);

  GridShape shape() const { return rel_.shape(); }
  const Relation& relation() const { return rel_; }
  const RelationRows& rows() const { return rel_.rows(); }
  bool contains(GridPoint k, GridPoint h) const { return rel_.contains(k, h); }
  std::vector<GridPair> pairs(bool include_reflexive = false) const {
    return rel_.pairs(include_reflexive);
  }

  friend bool operator==(const TransferSystem& a, const TransferSystem& b) {
    return a.rel_ == b.rel_;
  }
  friend bool operator<(const TransferSystem& a, const TransferSystem& b) {
    if (a.shape() != b.shape())
      return std::pair(a.shape().m, a.shape().n) < std::pair(b.shape().m, b.shape().n);
    return a.rows() < b.rows();
  }

 private:
  explicit TransferSystem(Relation r) : rel_(std::move(r)) {}
  friend TransferSystem generate(const Relation& r);
  friend TransferSystem restrict(const TransferSystem& t, GridPoint top);

  Relation rel_;
};

struct AxiomReport {
  bool refines = false;
  bool reflexive = false;
  bool transitive = false;
  bool restriction = false;

  bool ok() const { return refines && reflexive && transitive && restriction; }
};

AxiomReport check_axioms(const Relation& r);
bool is_transfer_system(const Relation& r);

/// Minimal transfer system containing r.
TransferSystem generate(const Relation& r);

/// L <= K <= H and L -> H imply K -> H.
bool is_saturated(const TransferSystem& t);

/// The system on [top.i] x [top.j] made of the pairs lying below `top`.
TransferSystem restrict(const TransferSystem& t, GridPoint top);

/// Pairs of t that are unit edges of the grid, sorted.
std::vector<GridEdge> cover_relations(const TransferSystem& t);

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 26;

/// Brute-force oracle: visits every transfer system on the shape exactly once.
///
/// Subsets of the strict comparable pairs are explored depth first in
/// binary-reflected Gray order, pairs grouped by target. A subtree is cut as
/// soon as every axiom instance whose largest element is the current target
/// has been decided and one fails. Throws BudgetExceeded after `node_budget`
/// search nodes.
void for_each_transfer_system(GridShape shape,
                              const std::function<void(const TransferSystem&)>& visit,
                              std::uint64_t node_budget = kDefaultEnumerationBudget);

std::vector<TransferSystem> enumerate_transfer_systems(
    GridShape shape, std::uint64_t node_budget = kDefaultEnumerationBudget);

std::vector<TransferSystem> enumerate_saturated_bruteforce(
    GridShape shape, std::uint64_t node_budget = kDefaultEnumerationBudget);

}  // namespace transfer
