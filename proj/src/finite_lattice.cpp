#include "transfer/finite_lattice.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace transfer {

FiniteLattice FiniteLattice::grid(GridShape shape) {
  if (shape.m < 0 || shape.n < 0) throw std::invalid_argument("grid shape must be non-negative");
  if (shape.point_count() > kMaxLatticeSize)
    throw std::length_error("grid lattice limited to 64 points");
  FiniteLattice lat;
  lat.size_ = shape.point_count();
  lat.down_.assign(lat.size_, 0);
  lat.meet_.assign(lat.size_ * lat.size_, 0);
  for (std::size_t a = 0; a < lat.size_; ++a) {
    for (std::size_t b = 0; b < lat.size_; ++b) {
      GridPoint x = shape.point(a), y = shape.point(b);
      if (transfer::leq(x, y)) lat.down_[b] |= bit(a);
      lat.meet_[a * lat.size_ + b] = static_cast<std::uint8_t>(shape.index(transfer::meet(x, y)));
    }
  }
  lat.finish();
  return lat;
}

FiniteLattice FiniteLattice::divisors(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("modulus must be positive");
  std::vector<std::uint64_t> divs;
  for (std::uint64_t d = 1; d * d <= k; ++d) {
    if (k % d != 0) continue;
    divs.push_back(d);
    if (d * d != k) divs.push_back(k / d);
  }
  std::sort(divs.begin(), divs.end());
  if (divs.size() > kMaxLatticeSize) throw std::length_error("divisor lattice limited to 64 elements");
  FiniteLattice lat;
  lat.size_ = divs.size();
  lat.down_.assign(lat.size_, 0);
  lat.meet_.assign(lat.size_ * lat.size_, 0);
  for (std::size_t a = 0; a < lat.size_; ++a) {
    for (std::size_t b = 0; b < lat.size_; ++b) {
      if (divs[b] % divs[a] == 0) lat.down_[b] |= bit(a);
      auto g = std::gcd(divs[a], divs[b]);
      auto it = std::lower_bound(divs.begin(), divs.end(), g);
      lat.meet_[a * lat.size_ + b] = static_cast<std::uint8_t>(it - divs.begin());
    }
  }
  lat.finish();
  return lat;
}

void FiniteLattice::finish() {
  up_.assign(size_, 0);
  for (std::size_t b = 0; b < size_; ++b)
    for_each_bit(down_[b], [&](std::size_t a) { up_[a] |= bit(b); });
}

bool FiniteLattice::is_cover(std::size_t a, std::size_t b) const {
  if (a == b || !leq(a, b)) return false;
  Mask between = up_[a] & down_[b] & ~bit(a) & ~bit(b);
  return between == 0;
}

std::shared_ptr<const FiniteLattice> grid_lattice(GridShape shape) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const FiniteLattice>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{shape.m, shape.n}];
  if (!slot) slot = std::make_shared<const FiniteLattice>(FiniteLattice::grid(shape));
  return slot;
}

namespace axioms {

bool refines_order(const FiniteLattice& lat, const RelationRows& rows) {
  for (std::size_t h = 0; h < lat.size(); ++h)
    if (rows[h] & ~lat.down_set(h)) return false;
  return true;
}

bool reflexive(const FiniteLattice& lat, const RelationRows& rows) {
  for (std::size_t h = 0; h < lat.size(); ++h)
    if (!(rows[h] & bit(h))) return false;
  return true;
}

bool transitive(const FiniteLattice& lat, const RelationRows& rows) {
  for (std::size_t h = 0; h < lat.size(); ++h) {
    bool ok = true;
    for_each_bit(rows[h], [&](std::size_t k) { ok = ok && (rows[k] & ~rows[h]) == 0; });
    if (!ok) return false;
  }
  return true;
}

bool restriction_closed(const FiniteLattice& lat, const RelationRows& rows) {
  for (std::size_t h = 0; h < lat.size(); ++h) {
    bool ok = true;
    for_each_bit(rows[h], [&](std::size_t k) {
      for_each_bit(lat.down_set(h), [&](std::size_t m) {
        ok = ok && (rows[m] & bit(lat.meet(k, m)));
      });
    });
    if (!ok) return false;
  }
  return true;
}

bool saturated(const FiniteLattice& lat, const RelationRows& rows) {
  for (std::size_t h = 0; h < lat.size(); ++h) {
    bool ok = true;
    for_each_bit(rows[h], [&](std::size_t l) {
      ok = ok && (lat.up_set(l) & lat.down_set(h) & ~rows[h]) == 0;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace axioms

RelationRows close_transfer(const FiniteLattice& lat, RelationRows rows) {
  const std::size_t n = lat.size();
  for (std::size_t h = 0; h < n; ++h) rows[h] |= bit(h);
  bool changed = true;
  while (changed) {
    RelationRows before = rows;
    for (std::size_t h = 0; h < n; ++h) {
      for_each_bit(rows[h], [&](std::size_t k) {
        for_each_bit(lat.down_set(h), [&](std::size_t m) { rows[m] |= bit(lat.meet(k, m)); });
      });
    }
    // Warshall over the intermediate element.
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t h = 0; h < n; ++h)
        if (rows[h] & bit(k)) rows[h] |= rows[k];
    changed = rows != before;
  }
  return rows;
}

RelationRows identity_rows(const FiniteLattice& lat) {
  RelationRows rows(lat.size());
  for (std::size_t h = 0; h < lat.size(); ++h) rows[h] = bit(h);
  return rows;
}

RelationRows order_rows(const FiniteLattice& lat) {
  RelationRows rows(lat.size());
  for (std::size_t h = 0; h < lat.size(); ++h) rows[h] = lat.down_set(h);
  return rows;
}

}  // namespace transfer
