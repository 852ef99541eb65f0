#pragma once

// Index sets in Z/kZ, the transfer systems they induce on the divisor lattice
// of k, and the inductive construction of index sets for saturated transfer
// systems on C_{p q^n}.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "transfer/errors.hpp"
#include "transfer/finite_lattice.hpp"
#include "transfer/residue_mask.hpp"
#include "transfer/saturated_cover.hpp"
#include "transfer/transfer_system.hpp"

namespace transfer {

using Residue = std::uint64_t;

/// A subset of Z/kZ containing 0 and closed under negation.
class IndexSet {
 public:
  /// Residues are reduced mod k. Throws std::invalid_argument if 0 is
  /// missing or the set is not closed under negation.
  static IndexSet from_residues(Residue modulus, std::span<const Residue> residues);
  /// Adds 0 and the negatives of the given residues.
  static IndexSet symmetric_closure(Residue modulus, std::span<const Residue> residues);
  static IndexSet zero(Residue modulus);
  static IndexSet full(Residue modulus);
  static IndexSet from_mask(ResidueMask mask);

  Residue modulus() const { return mask_.modulus(); }
  const ResidueMask& mask() const { return mask_; }
  bool contains(Residue x) const { return mask_.test(x % modulus()); }
  std::size_t size() const { return static_cast<std::size_t>(mask_.count()); }
  /// Ascending.
  std::vector<Residue> members() const { return mask_.members(); }

  /// S + d == S for S = (this mod e). e must divide the modulus.
  bool reduction_invariant(Residue e, Residue d) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  explicit IndexSet(ResidueMask m) : mask_(std::move(m)) {}
  ResidueMask mask_;
};

std::ostream& operator<<(std::ostream& os, const IndexSet& s);

bool is_prime(std::uint64_t x);

/// Distinct primes p, q > 3 and an exponent n; the group is C_{p q^n}.
struct GroupSpec {
  std::uint64_t p = 5;
  std::uint64_t q = 7;
  int n = 0;

  /// Throws std::invalid_argument unless p, q are distinct primes > 3.
  static GroupSpec make(std::uint64_t p, std::uint64_t q, int n);
  Residue order() const;
};

/// Integer power with overflow check (throws std::overflow_error).
std::uint64_t checked_pow(std::uint64_t base, int exp);

/// A relation on the divisor lattice of k, stored row-wise like grid systems.
class DivisorTransferSystem {
 public:
  DivisorTransferSystem(Residue modulus, RelationRows rows);

  Residue modulus() const { return modulus_; }
  const std::vector<Residue>& divisors() const { return divisors_; }
  const FiniteLattice& lattice() const { return *lattice_; }
  const RelationRows& rows() const { return rows_; }
  /// Index of divisor d in divisors(); throws std::invalid_argument.
  std::size_t index_of(Residue d) const;
  bool contains(Residue d, Residue e) const;
  /// Strict pairs (d, e), ordered by e then d.
  std::vector<std::pair<Residue, Residue>> pairs() const;

  bool is_transfer_system() const;
  bool is_saturated() const;
  /// Pairs below l, on the divisor lattice of l.
  DivisorTransferSystem restrict(Residue l) const;

  friend bool operator==(const DivisorTransferSystem& a, const DivisorTransferSystem& b) {
    return a.modulus_ == b.modulus_ && a.rows_ == b.rows_;
  }

 private:
  Residue modulus_;
  std::vector<Residue> divisors_;
  std::shared_ptr<const FiniteLattice> lattice_;
  RelationRows rows_;
};

/// C_d -> C_e iff (I mod e) + d = (I mod e), for every d | e | k.
DivisorTransferSystem modular_transfer_system(const IndexSet& index);
/// The same system on the grid [m] x [n] where k = p^m q^n. Throws
/// std::invalid_argument if k does not factor that way.
TransferSystem modular_grid_system(const IndexSet& index, std::uint64_t p, std::uint64_t q);
TransferSystem modular_grid_system(const IndexSet& index, std::uint64_t p, std::uint64_t q, GridShape shape);

DivisorTransferSystem to_divisor_system(const TransferSystem& t, std::uint64_t p, std::uint64_t q);
TransferSystem to_grid_system(const DivisorTransferSystem& t, std::uint64_t p, std::uint64_t q);

/// J mod l. Throws std::invalid_argument unless l divides the modulus.
IndexSet restrict_index(const IndexSet& index, Residue l);

enum class CoverType { I, II, III, IV };
const char* to_string(CoverType t);

/// Type of a saturated cover on [1] x [n], n >= 1, read off its top row.
CoverType classify_type(const SaturatedCover& s);
CoverType classify_type(const TransferSystem& t);

/// 0 <= alpha < q with (alpha p q^n + i) mod q^{n+1} in [0, q^n), for 0 < i < p q^n.
std::uint64_t lift_coefficient(std::uint64_t i, std::uint64_t p, std::uint64_t q, int n);
/// The unique 0 < c < pq with q | c and c = a (mod p), for 0 < a < p.
std::uint64_t crt_multiple(std::uint64_t a, std::uint64_t p, std::uint64_t q);

/// Index set in Z/q^nZ for a saturated system on the chain [0] x [n].
/// Throws BudgetExceeded if the construction fails verification and the
/// fallback search is out of range.
IndexSet realize_chain(const TransferSystem& t, std::uint64_t q);

enum class Construction { BaseTrivial, TypeI, TypeII, TypeIII, TypeIIIShifted, TypeIV, TypeIVShifted };
const char* to_string(Construction c);

struct RealizationCertificate {
  GroupSpec group;
  TransferSystem target;
  IndexSet index_set;
  Residue witness;  // a q^n with 0 < a < p, a member of index_set
  Construction construction;
};

/// Index set for a saturated system on [1] x [n] with a nonzero multiple of
/// q^n. Throws std::invalid_argument for unsaturated input or a wrong shape,
/// and RealizationError if the result does not induce the target.
RealizationCertificate realize(const TransferSystem& t, std::uint64_t p, std::uint64_t q);

/// Re-checks every certificate invariant from scratch.
bool verify_certificate(const RealizationCertificate& c);

/// Multi-line listing of the pairs present in only one of the two systems.
std::string describe_difference(const TransferSystem& expected, const TransferSystem& actual);

inline constexpr int kDefaultOrbitBudget = 22;

/// Negation orbits of Z/kZ minus 0.
std::uint64_t negation_orbit_count(Residue k);

/// Exhaustive search over all index sets of Z/kZ (one bit per negation orbit,
/// Gray-code order) for one inducing the target. Returns nullopt when none
/// exists. Throws BudgetExceeded if there are more than max_orbits orbits.
std::optional<IndexSet> find_index_set_bruteforce(const DivisorTransferSystem& target,
                                                  int max_orbits = kDefaultOrbitBudget);
std::optional<IndexSet> find_index_set_bruteforce(const TransferSystem& target, std::uint64_t p,
                                                  std::uint64_t q, int max_orbits = kDefaultOrbitBudget);

}  // namespace transfer
