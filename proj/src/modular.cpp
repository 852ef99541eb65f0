#include "transfer/modular.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace transfer {

namespace {

std::shared_ptr<const FiniteLattice> divisor_lattice(Residue k) {
  static std::mutex mu;
  static std::map<Residue, std::shared_ptr<const FiniteLattice>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[k];
  if (!slot) slot = std::make_shared<const FiniteLattice>(FiniteLattice::divisors(k));
  return slot;
}

std::vector<Residue> divisor_list(Residue k) {
  std::vector<Residue> divs;
  for (Residue d = 1; d * d <= k; ++d) {
    if (k % d != 0) continue;
    divs.push_back(d);
    if (d * d != k) divs.push_back(k / d);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Returns (g, x, y) with a x + b y = g.
std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const std::int64_t t = a / b;
    std::tie(a, b) = std::make_tuple(b, a - t * b);
    std::tie(x0, x1) = std::make_tuple(x1, x0 - t * x1);
    std::tie(y0, y1) = std::make_tuple(y1, y0 - t * y1);
  }
  return {a, x0, y0};
}

std::uint64_t mod_floor(std::int64_t x, std::uint64_t m) {
  const auto sm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((x % sm) + sm) % sm);
}

std::optional<GridShape> factor_pq(Residue k, std::uint64_t p, std::uint64_t q) {
  GridShape s;
  while (k % p == 0) {
    k /= p;
    ++s.m;
  }
  while (k % q == 0) {
    k /= q;
    ++s.n;
  }
  if (k != 1) return std::nullopt;
  return s;
}

Residue divisor_at(GridPoint x, std::uint64_t p, std::uint64_t q) { return checked_pow(p, x.i) * checked_pow(q, x.j); }

ResidueMask negation_closed(ResidueMask m) {
  const Residue k = m.modulus();
  m.set(0);
  for (Residue x : m.members()) m.set((k - x) % k);
  return m;
}

}  // namespace

// ---------------------------------------------------------------- IndexSet

IndexSet IndexSet::from_mask(ResidueMask mask) {
  const Residue k = mask.modulus();
  if (k == 0) throw std::invalid_argument("index set needs a positive modulus");
  if (!mask.test(0)) throw std::invalid_argument("index set must contain 0");
  bool closed = true;
  mask.for_each([&](Residue x) { closed = closed && mask.test((k - x) % k); });
  if (!closed) throw std::invalid_argument("index set must be closed under negation");
  return IndexSet(std::move(mask));
}

IndexSet IndexSet::from_residues(Residue modulus, std::span<const Residue> residues) {
  ResidueMask m(modulus);
  for (Residue x : residues) m.set(x % modulus);
  return from_mask(std::move(m));
}

IndexSet IndexSet::symmetric_closure(Residue modulus, std::span<const Residue> residues) {
  ResidueMask m(modulus);
  for (Residue x : residues) m.set(x % modulus);
  return IndexSet(negation_closed(std::move(m)));
}

IndexSet IndexSet::zero(Residue modulus) {
  ResidueMask m(modulus);
  m.set(0);
  return IndexSet(std::move(m));
}

IndexSet IndexSet::full(Residue modulus) {
  ResidueMask m(modulus);
  for (Residue x = 0; x < modulus; ++x) m.set(x);
  return IndexSet(std::move(m));
}

bool IndexSet::reduction_invariant(Residue e, Residue d) const {
  return mask_.reduced(e).is_translation_invariant(d % e);
}

std::ostream& operator<<(std::ostream& os, const IndexSet& s) {
  os << '{';
  bool first = true;
  s.mask().for_each([&](Residue x) {
    if (!first) os << ", ";
    first = false;
    os << x;
  });
  return os << '}';
}

// --------------------------------------------------------------- arithmetic

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

GroupSpec GroupSpec::make(std::uint64_t p, std::uint64_t q, int n) {
  if (!is_prime(p) || !is_prime(q) || p <= 3 || q <= 3)
    throw std::invalid_argument("p and q must be primes greater than 3");
  if (p == q) throw std::invalid_argument("p and q must be distinct");
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  GroupSpec g{p, q, n};
  (void)g.order();
  return g;
}

Residue GroupSpec::order() const { return p * checked_pow(q, n); }

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  if (exp < 0) throw std::invalid_argument("negative exponent");
  std::uint64_t r = 1;
  for (int e = 0; e < exp; ++e)
    if (__builtin_mul_overflow(r, base, &r)) throw std::overflow_error("power overflows 64 bits");
  return r;
}

// --------------------------------------------------- DivisorTransferSystem

DivisorTransferSystem::DivisorTransferSystem(Residue modulus, RelationRows rows)
    : modulus_(modulus), divisors_(divisor_list(modulus)), lattice_(divisor_lattice(modulus)), rows_(std::move(rows)) {
  if (rows_.size() != divisors_.size()) throw std::invalid_argument("relation rows do not match the divisor lattice");
  if (!axioms::refines_order(*lattice_, rows_)) throw std::invalid_argument("relation does not refine divisibility");
}

std::size_t DivisorTransferSystem::index_of(Residue d) const {
  auto it = std::lower_bound(divisors_.begin(), divisors_.end(), d);
  if (it == divisors_.end() || *it != d)
    throw std::invalid_argument(std::to_string(d) + " does not divide " + std::to_string(modulus_));
  return static_cast<std::size_t>(it - divisors_.begin());
}

bool DivisorTransferSystem::contains(Residue d, Residue e) const {
  return (rows_[index_of(e)] >> index_of(d)) & 1U;
}

std::vector<std::pair<Residue, Residue>> DivisorTransferSystem::pairs() const {
  std::vector<std::pair<Residue, Residue>> out;
  for (std::size_t e = 0; e < rows_.size(); ++e)
    for_each_bit(rows_[e] & ~bit(e), [&](std::size_t d) { out.emplace_back(divisors_[d], divisors_[e]); });
  return out;
}

bool DivisorTransferSystem::is_transfer_system() const {
  return axioms::refines_order(*lattice_, rows_) && axioms::reflexive(*lattice_, rows_) &&
         axioms::transitive(*lattice_, rows_) && axioms::restriction_closed(*lattice_, rows_);
}

bool DivisorTransferSystem::is_saturated() const { return axioms::saturated(*lattice_, rows_); }

DivisorTransferSystem DivisorTransferSystem::restrict(Residue l) const {
  if (l == 0 || modulus_ % l != 0) throw std::invalid_argument("restriction target must divide the modulus");
  const auto sub = divisor_list(l);
  RelationRows rows(sub.size(), 0);
  for (std::size_t e = 0; e < sub.size(); ++e)
    for (std::size_t d = 0; d < sub.size(); ++d)
      if (contains(sub[d], sub[e])) rows[e] |= bit(d);
  return DivisorTransferSystem(l, std::move(rows));
}

// ---------------------------------------------------------- modular systems

DivisorTransferSystem modular_transfer_system(const IndexSet& index) {
  const Residue k = index.modulus();
  const auto divs = divisor_list(k);
  const auto lat = divisor_lattice(k);
  RelationRows rows(divs.size(), 0);
  for (std::size_t e = 0; e < divs.size(); ++e) {
    const ResidueMask reduced = index.mask().reduced(divs[e]);
    for_each_bit(lat->down_set(e), [&](std::size_t d) {
      if (reduced.is_translation_invariant(divs[d] % divs[e])) rows[e] |= bit(d);
    });
  }
  return DivisorTransferSystem(k, std::move(rows));
}

TransferSystem modular_grid_system(const IndexSet& index, std::uint64_t p, std::uint64_t q, GridShape shape) {
  if (divisor_at(shape.top(), p, q) != index.modulus())
    throw std::invalid_argument("modulus " + std::to_string(index.modulus()) + " does not match the grid shape");
  const std::size_t size = shape.point_count();
  std::vector<Residue> value(size);
  for (std::size_t a = 0; a < size; ++a) value[a] = divisor_at(shape.point(a), p, q);
  Relation r(shape);
  for (std::size_t b = 0; b < size; ++b) {
    const GridPoint h = shape.point(b);
    const ResidueMask reduced = index.mask().reduced(value[b]);
    for (std::size_t a = 0; a < size; ++a) {
      const GridPoint k = shape.point(a);
      if (leq(k, h) && reduced.is_translation_invariant(value[a] % value[b])) r.add(k, h);
    }
  }
  return TransferSystem::from_relation(std::move(r));
}

TransferSystem modular_grid_system(const IndexSet& index, std::uint64_t p, std::uint64_t q) {
  auto shape = factor_pq(index.modulus(), p, q);
  if (!shape) throw std::invalid_argument("modulus is not of the form p^m q^n");
  return modular_grid_system(index, p, q, *shape);
}

DivisorTransferSystem to_divisor_system(const TransferSystem& t, std::uint64_t p, std::uint64_t q) {
  const GridShape shape = t.shape();
  const Residue k = divisor_at(shape.top(), p, q);
  const auto divs = divisor_list(k);
  auto idx = [&](GridPoint x) {
    return static_cast<std::size_t>(std::lower_bound(divs.begin(), divs.end(), divisor_at(x, p, q)) - divs.begin());
  };
  if (divs.size() != shape.point_count()) throw std::invalid_argument("p and q must be distinct primes");
  RelationRows rows(divs.size(), 0);
  for (const auto& [a, b] : t.pairs(true)) rows[idx(b)] |= bit(idx(a));
  return DivisorTransferSystem(k, std::move(rows));
}

TransferSystem to_grid_system(const DivisorTransferSystem& t, std::uint64_t p, std::uint64_t q) {
  auto shape = factor_pq(t.modulus(), p, q);
  if (!shape) throw std::invalid_argument("modulus is not of the form p^m q^n");
  Relation r(*shape);
  for (const auto& k : grid_points(*shape))
    for (const auto& h : grid_points(*shape))
      if (leq(k, h) && t.contains(divisor_at(k, p, q), divisor_at(h, p, q))) r.add(k, h);
  return TransferSystem::from_relation(std::move(r));
}

IndexSet restrict_index(const IndexSet& index, Residue l) {
  if (l == 0 || index.modulus() % l != 0) throw std::invalid_argument("restriction modulus must divide the modulus");
  return IndexSet::from_mask(index.mask().reduced(l));
}

// -------------------------------------------------------------- top rows

const char* to_string(CoverType t) {
  switch (t) {
    case CoverType::I: return "I";
    case CoverType::II: return "II";
    case CoverType::III: return "III";
    case CoverType::IV: return "IV";
  }
  return "?";
}

CoverType classify_type(const SaturatedCover& s) {
  const GridShape shape = s.shape();
  if (shape.m != 1 || shape.n < 1) throw std::invalid_argument("cover types are defined on [1] x [n] with n >= 1");
  const EdgeSet& e = s.edges();
  const bool left = e.has_vertical(shape.n, 0);
  const bool right = e.has_vertical(shape.n, 1);
  if (left && right) return CoverType::II;
  if (left) return CoverType::III;
  return e.has_horizontal(1, shape.n) ? CoverType::I : CoverType::IV;
}

CoverType classify_type(const TransferSystem& t) { return classify_type(system_to_cover(t)); }

std::uint64_t lift_coefficient(std::uint64_t i, std::uint64_t p, std::uint64_t q, int n) {
  const std::uint64_t qn = checked_pow(q, n);
  if (i == 0 || i >= p * qn) throw std::invalid_argument("lift_coefficient needs 0 < i < p q^n");
  const std::uint64_t k = i / qn;
  const auto [g, c, d] = ext_gcd(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q));
  (void)d;
  if (g != 1) throw std::invalid_argument("p and q must be coprime");
  const std::int64_t beta = -c * static_cast<std::int64_t>(k);
  const std::uint64_t alpha = mod_floor(beta, q);
  if ((alpha * p * qn + i) % (q * qn) >= qn) throw std::logic_error("lift_coefficient post-condition failed");
  return alpha;
}

std::uint64_t crt_multiple(std::uint64_t a, std::uint64_t p, std::uint64_t q) {
  if (a == 0 || a >= p) throw std::invalid_argument("crt_multiple needs 0 < a < p");
  const auto [g, x, y] = ext_gcd(static_cast<std::int64_t>(q), static_cast<std::int64_t>(p));
  (void)y;
  if (g != 1) throw std::invalid_argument("p and q must be coprime");
  const std::uint64_t c = q * ((a % p) * mod_floor(x, p) % p);
  if (c == 0 || c >= p * q || c % q != 0 || c % p != a % p) throw std::logic_error("crt_multiple post-condition failed");
  return c;
}

// ------------------------------------------------------------ construction

namespace {

void require_chain(const TransferSystem& t) {
  if (t.shape().m != 0) throw std::invalid_argument("expected a system on [0] x [n]");
  if (!is_saturated(t)) throw std::invalid_argument("transfer system is not saturated");
}

IndexSet build_chain(const TransferSystem& t, std::uint64_t q) {
  const int n = t.shape().n;
  if (n == 0) return IndexSet::zero(1);
  const IndexSet lower = build_chain(restrict(t, {0, n - 1}), q);
  const Residue step = checked_pow(q, n - 1);
  const Residue k = step * q;
  ResidueMask out(k);
  if (t.contains({0, n - 1}, {0, n})) {
    lower.mask().for_each([&](Residue i) {
      for (Residue alpha = 0; alpha < q; ++alpha) out.set(alpha * step + i);
    });
  } else {
    out.set(0);
    lower.mask().for_each([&](Residue i) {
      if (i == 0) return;
      out.set(i);
      out.set(k - i);
    });
  }
  return IndexSet::from_mask(std::move(out));
}

Residue smallest_witness(const IndexSet& s, std::uint64_t p, Residue qn) {
  for (Residue a = 1; a < p; ++a)
    if (s.contains(a * qn)) return a;
  return 0;
}

struct Built {
  IndexSet set;
  Construction how;
};

Built build(const TransferSystem& t, std::uint64_t p, std::uint64_t q) {
  const int n = t.shape().n;
  const Residue qn = checked_pow(q, n);
  const Residue k = p * qn;
  ResidueMask out(k);
  Construction how;

  if (n == 0 && !t.contains({0, 0}, {1, 0})) {
    out.set(0);
    out.set(1);
    out.set(p - 1);
    how = Construction::BaseTrivial;
  } else if (n == 0 || classify_type(t) == CoverType::I) {
    const IndexSet chain = realize_chain(restrict(t, {0, n}), q);
    chain.mask().for_each([&](Residue i) {
      for (Residue alpha = 0; alpha < p; ++alpha) out.set(alpha * qn + i);
    });
    how = Construction::TypeI;
  } else {
    const CoverType type = classify_type(t);
    const Built lower = build(restrict(t, {1, n - 1}), p, q);
    const Residue step = qn / q;  // q^{n-1}
    const Residue lower_k = p * step;
    const Residue a = smallest_witness(lower.set, p, step);
    if (a == 0) throw RealizationError("lower index set has no nonzero multiple of q^(n-1)");

    if (type == CoverType::II || type == CoverType::III) {
      lower.set.mask().for_each([&](Residue i) {
        for (Residue alpha = 0; alpha < q; ++alpha) out.set(alpha * lower_k + i);
      });
      how = Construction::TypeII;
      if (type == CoverType::III) {
        // With q | a the usual removal would also delete every nonzero multiple of q^n.
        Residue removed = a * step;
        how = Construction::TypeIII;
        if (a % q == 0) {
          removed = (a + p) * step;
          how = Construction::TypeIIIShifted;
        }
        out.reset(removed);
        out.reset(k - removed);
      }
    } else {
      const Residue c = crt_multiple(a, p, q);
      out.set(0);
      out.set(c * step);
      out.set(k - c * step);
      const Residue skip1 = a * step, skip2 = lower_k - a * step;
      std::optional<Residue> first_lift;
      lower.set.mask().for_each([&](Residue i) {
        if (i == 0 || i == skip1 || i == skip2) return;
        const Residue x = lift_coefficient(i, p, q, n - 1) * lower_k + i;
        if (!first_lift) first_lift = x;
        out.set(x);
        out.set(k - x);
      });
      how = Construction::TypeIV;
      // When the lower set is invariant under q^(n-1) the lifts fill whole
      // cosets of q^n. Moving one lift by p q^(n-1) breaks that.
      if (out.is_translation_invariant(qn)) {
        if (!first_lift) throw RealizationError("type IV repair has no element to move");
        out.reset(*first_lift);
        out.reset(k - *first_lift);
        const Residue moved = (*first_lift + lower_k) % k;
        out.set(moved);
        out.set(k - moved);
        how = Construction::TypeIVShifted;
      }
    }
  }

  IndexSet result = IndexSet::from_mask(std::move(out));
  const TransferSystem induced = modular_grid_system(result, p, q, t.shape());
  if (!(induced == t)) {
    std::ostringstream os;
    os << to_string(how) << " construction on C_" << k << " failed verification\n"
       << describe_difference(t, induced);
    throw RealizationError(os.str());
  }
  return {std::move(result), how};
}

}  // namespace

IndexSet realize_chain(const TransferSystem& t, std::uint64_t q) {
  require_chain(t);
  if (!is_prime(q) || q < 3) throw std::invalid_argument("q must be an odd prime");
  IndexSet built = build_chain(t, q);
  if (modular_grid_system(built, 1, q, t.shape()) == t) return built;
  auto found = find_index_set_bruteforce(to_divisor_system(t, 1, q));
  if (!found) throw RealizationError("no index set realizes this chain system");
  return *found;
}

const char* to_string(Construction c) {
  switch (c) {
    case Construction::BaseTrivial: return "base";
    case Construction::TypeI: return "I";
    case Construction::TypeII: return "II";
    case Construction::TypeIII: return "III";
    case Construction::TypeIIIShifted: return "III-shifted";
    case Construction::TypeIV: return "IV";
    case Construction::TypeIVShifted: return "IV-shifted";
  }
  return "?";
}

RealizationCertificate realize(const TransferSystem& t, std::uint64_t p, std::uint64_t q) {
  if (t.shape().m != 1) throw std::invalid_argument("realize expects a system on [1] x [n]");
  const GroupSpec group = GroupSpec::make(p, q, t.shape().n);
  if (!is_saturated(t)) throw std::invalid_argument("transfer system is not saturated");
  Built built = build(t, p, q);
  const Residue qn = checked_pow(q, group.n);
  const Residue a = smallest_witness(built.set, p, qn);
  if (a == 0) throw RealizationError("index set has no nonzero multiple of q^n");
  RealizationCertificate cert{group, t, std::move(built.set), a * qn, built.how};
  if (!verify_certificate(cert)) throw RealizationError("certificate failed verification");
  return cert;
}

bool verify_certificate(const RealizationCertificate& c) {
  const GroupSpec& g = c.group;
  if (c.target.shape() != GridShape{1, g.n}) return false;
  if (c.index_set.modulus() != g.order()) return false;
  const Residue qn = checked_pow(g.q, g.n);
  if (c.witness == 0 || c.witness % qn != 0 || c.witness / qn >= g.p || !c.index_set.contains(c.witness)) return false;
  return modular_grid_system(c.index_set, g.p, g.q, c.target.shape()) == c.target;
}

std::string describe_difference(const TransferSystem& expected, const TransferSystem& actual) {
  std::ostringstream os;
  if (expected.shape() != actual.shape()) {
    os << "shape " << expected.shape() << " vs " << actual.shape() << '\n';
    return os.str();
  }
  for (const auto& [k, h] : expected.pairs())
    if (!actual.contains(k, h)) os << "  missing " << k << "->" << h << '\n';
  for (const auto& [k, h] : actual.pairs())
    if (!expected.contains(k, h)) os << "  extra   " << k << "->" << h << '\n';
  return os.str();
}

// ------------------------------------------------------------------ search

std::uint64_t negation_orbit_count(Residue k) { return k / 2; }

namespace {

std::optional<IndexSet> search_small(const DivisorTransferSystem& target, std::uint64_t orbits) {
  const Residue k = target.modulus();
  const auto& divs = target.divisors();
  const auto& lat = target.lattice();
  // Largest reductions first; they reject most candidates.
  std::vector<std::size_t> order(divs.size());
  for (std::size_t e = 0; e < divs.size(); ++e) order[e] = divs.size() - 1 - e;

  auto matches = [&](std::uint64_t word) {
    for (std::size_t e : order) {
      const Residue ev = divs[e];
      const std::uint64_t reduced = small_mask::reduce(word, k, ev);
      bool ok = true;
      for_each_bit(lat.down_set(e), [&](std::size_t d) {
        if (!ok) return;
        const bool inv = small_mask::rotate(reduced, ev, divs[d] % ev) == reduced;
        ok = inv == (((target.rows()[e] >> d) & 1U) != 0);
      });
      if (!ok) return false;
    }
    return true;
  };

  std::uint64_t word = 1;
  auto found = [&]() {
    ResidueMask m(k);
    for_each_bit(word, [&](std::size_t x) { m.set(x); });
    return IndexSet::from_mask(std::move(m));
  };
  if (matches(word)) return found();
  const std::uint64_t total = std::uint64_t{1} << orbits;
  for (std::uint64_t g = 1; g < total; ++g) {
    const Residue o = static_cast<Residue>(std::countr_zero(g)) + 1;
    word ^= (std::uint64_t{1} << o) | (std::uint64_t{1} << (k - o));
    if (matches(word)) return found();
  }
  return std::nullopt;
}

std::optional<IndexSet> search_large(const DivisorTransferSystem& target, std::uint64_t orbits) {
  const Residue k = target.modulus();
  ResidueMask m(k);
  m.set(0);
  auto matches = [&]() { return modular_transfer_system(IndexSet::from_mask(m)) == target; };
  if (matches()) return IndexSet::from_mask(m);
  const std::uint64_t total = std::uint64_t{1} << orbits;
  for (std::uint64_t g = 1; g < total; ++g) {
    const Residue o = static_cast<Residue>(std::countr_zero(g)) + 1;
    m.flip(o);
    if (k - o != o) m.flip(k - o);
    if (matches()) return IndexSet::from_mask(m);
  }
  return std::nullopt;
}

}  // namespace

std::optional<IndexSet> find_index_set_bruteforce(const DivisorTransferSystem& target, int max_orbits) {
  const std::uint64_t orbits = negation_orbit_count(target.modulus());
  if (max_orbits < 0 || orbits > static_cast<std::uint64_t>(max_orbits) || orbits > 62)
    throw BudgetExceeded("Z/" + std::to_string(target.modulus()) + "Z has " + std::to_string(orbits) +
                         " negation orbits, over the search budget of " + std::to_string(max_orbits));
  if (target.modulus() <= 64) return search_small(target, orbits);
  return search_large(target, orbits);
}

std::optional<IndexSet> find_index_set_bruteforce(const TransferSystem& target, std::uint64_t p, std::uint64_t q,
                                                  int max_orbits) {
  return find_index_set_bruteforce(to_divisor_system(target, p, q), max_orbits);
}

}  // namespace transfer
