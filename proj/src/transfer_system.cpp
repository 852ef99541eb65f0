#include "transfer/transfer_system.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace transfer {

Relation::Relation(GridShape shape)
    : shape_(shape), lattice_(grid_lattice(shape)), rows_(shape.point_count(), 0) {}

Relation Relation::from_rows(GridShape shape, RelationRows rows) {
  Relation r(shape);
  if (rows.size() != shape.point_count()) throw std::invalid_argument("row count does not match shape");
  if (!axioms::refines_order(*r.lattice_, rows))
    throw std::invalid_argument("relation does not refine the subgroup order");
  r.rows_ = std::move(rows);
  return r;
}

Relation Relation::from_pairs(GridShape shape, std::span<const GridPair> pairs) {
  Relation r(shape);
  for (const auto& [k, h] : pairs) r.add(k, h);
  return r;
}

Relation Relation::from_edges(GridShape shape, std::span<const GridEdge> edges) {
  Relation r(shape);
  for (const auto& e : edges) r.add(e.source, e.target);
  return r;
}

void Relation::add(GridPoint k, GridPoint h) {
  if (!shape_.contains(k) || !shape_.contains(h)) {
    std::ostringstream msg;
    msg << "pair " << k << "->" << h << " lies outside " << shape_;
    throw std::invalid_argument(msg.str());
  }
  if (!leq(k, h)) {
    std::ostringstream msg;
    msg << "pair " << k << "->" << h << " is not order-compatible";
    throw std::invalid_argument(msg.str());
  }
  rows_[shape_.index(h)] |= bit(shape_.index(k));
}

bool Relation::contains(GridPoint k, GridPoint h) const {
  if (!shape_.contains(k) || !shape_.contains(h)) return false;
  return (rows_[shape_.index(h)] >> shape_.index(k)) & 1U;
}

std::vector<GridPair> Relation::pairs(bool include_reflexive) const {
  std::vector<GridPair> out;
  for (std::size_t h = 0; h < rows_.size(); ++h) {
    for_each_bit(rows_[h], [&](std::size_t k) {
      if (k != h || include_reflexive) out.emplace_back(shape_.point(k), shape_.point(h));
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

TransferSystem TransferSystem::trivial(GridShape shape) {
  Relation r(shape);
  return TransferSystem(Relation::from_rows(shape, identity_rows(r.lattice())));
}

TransferSystem TransferSystem::complete(GridShape shape) {
  Relation r(shape);
  return TransferSystem(Relation::from_rows(shape, order_rows(r.lattice())));
}

TransferSystem TransferSystem::from_relation(Relation r) {
  AxiomReport rep = check_axioms(r);
  if (!rep.refines) throw std::invalid_argument("not a transfer system: refinement fails");
  if (!rep.reflexive) throw std::invalid_argument("not a transfer system: reflexivity fails");
  if (!rep.transitive) throw std::invalid_argument("not a transfer system: transitivity fails");
  if (!rep.restriction) throw std::invalid_argument("not a transfer system: restriction fails");
  return TransferSystem(std::move(r));
}

AxiomReport check_axioms(const Relation& r) {
  const auto& lat = r.lattice();
  AxiomReport rep;
  rep.refines = axioms::refines_order(lat, r.rows());
  rep.reflexive = axioms::reflexive(lat, r.rows());
  rep.transitive = axioms::transitive(lat, r.rows());
  rep.restriction = axioms::restriction_closed(lat, r.rows());
  return rep;
}

bool is_transfer_system(const Relation& r) { return check_axioms(r).ok(); }

TransferSystem generate(const Relation& r) {
  return TransferSystem(Relation::from_rows(r.shape(), close_transfer(r.lattice(), r.rows())));
}

bool is_saturated(const TransferSystem& t) {
  return axioms::saturated(t.relation().lattice(), t.rows());
}

TransferSystem restrict(const TransferSystem& t, GridPoint top) {
  if (!t.shape().contains(top)) throw std::invalid_argument("restriction target outside the shape");
  GridShape sub{top.i, top.j};
  RelationRows rows(sub.point_count(), 0);
  for (std::size_t h = 0; h < rows.size(); ++h) {
    GridPoint hp = sub.point(h);
    for_each_bit(t.rows()[t.shape().index(hp)], [&](std::size_t k) {
      rows[h] |= bit(sub.index(t.shape().point(k)));
    });
  }
  return TransferSystem(Relation::from_rows(sub, std::move(rows)));
}

std::vector<GridEdge> cover_relations(const TransferSystem& t) {
  std::vector<GridEdge> out;
  for (const auto& [k, h] : t.pairs()) {
    if (!is_cover_pair(k, h)) continue;
    out.push_back({k, h, k.j == h.j ? Orientation::horizontal : Orientation::vertical});
  }
  return out;
}

namespace {

class BruteForceSearch {
 public:
  BruteForceSearch(GridShape shape, const std::function<void(const TransferSystem&)>& visit,
                   std::uint64_t budget)
      : shape_(shape), lat_(grid_lattice(shape)), visit_(visit), budget_(budget) {
    for (std::size_t h = 0; h < lat_->size(); ++h)
      for_each_bit(lat_->down_set(h) & ~bit(h), [&](std::size_t k) { pairs_.push_back({k, h}); });
    rows_ = identity_rows(*lat_);
  }

  void run() { descend(0, false); }

 private:
  struct Pair {
    std::size_t source;
    std::size_t target;
  };

  // Every axiom instance whose largest element is h, given all rows <= h decided.
  bool block_consistent(std::size_t h) const {
    Mask here = rows_[h];
    bool ok = true;
    for_each_bit(here, [&](std::size_t k) {
      ok = ok && (rows_[k] & ~here) == 0;
      for_each_bit(lat_->down_set(h), [&](std::size_t m) {
        ok = ok && (rows_[m] & bit(lat_->meet(k, m)));
      });
    });
    return ok;
  }

  void descend(std::size_t depth, bool reversed) {
    if (++nodes_ > budget_) {
      std::ostringstream msg;
      msg << "transfer-system enumeration on " << shape_ << " exceeded " << budget_ << " search nodes";
      throw BudgetExceeded(msg.str());
    }
    if (depth == pairs_.size()) {
      visit_(TransferSystem::from_relation(Relation::from_rows(shape_, rows_)));
      return;
    }
    const Pair p = pairs_[depth];
    const bool closes_block = depth + 1 == pairs_.size() || pairs_[depth + 1].target != p.target;
    for (int child = 0; child < 2; ++child) {
      const bool on = (child == 0) == reversed;
      if (on)
        rows_[p.target] |= bit(p.source);
      else
        rows_[p.target] &= ~bit(p.source);
      if (closes_block && !block_consistent(p.target)) continue;
      descend(depth + 1, child == 1);
    }
    rows_[p.target] &= ~bit(p.source);
  }

  GridShape shape_;
  std::shared_ptr<const FiniteLattice> lat_;
  const std::function<void(const TransferSystem&)>& visit_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<Pair> pairs_;
  RelationRows rows_;
};

}  // namespace

void for_each_transfer_system(GridShape shape,
                              const std::function<void(const TransferSystem&)>& visit,
                              std::uint64_t node_budget) {
  BruteForceSearch search(shape, visit, node_budget);
  search.run();
}

std::vector<TransferSystem> enumerate_transfer_systems(GridShape shape, std::uint64_t node_budget) {
  std::vector<TransferSystem> out;
  for_each_transfer_system(shape, [&](const TransferSystem& t) { out.push_back(t); }, node_budget);
  return out;
}

std::vector<TransferSystem> enumerate_saturated_bruteforce(GridShape shape,
                                                           std::uint64_t node_budget) {
  std::vector<TransferSystem> out;
  for_each_transfer_system(
      shape,
      [&](const TransferSystem& t) {
        if (is_saturated(t)) out.push_back(t);
      },
      node_budget);
  return out;
}

}  // namespace transfer
