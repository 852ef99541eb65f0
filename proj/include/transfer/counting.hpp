#pragma once

// Exact counts s(m, n) of saturated transfer systems on C_{p^m q^n}, by
// recurrence, by the Stirling closed form, and from the exponential
// generating function e^{2x+2y} / (e^x + e^y - e^{x+y})^3.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "transfer/series.hpp"

namespace transfer {

using BigCount = mpz_class;
using CountTable = std::vector<std::vector<BigCount>>;  // [m][n]

BigCount binomial(unsigned n, unsigned k);
BigCount factorial(unsigned n);

/// S(l, k) from S(l+1, k) = k S(l, k) + S(l, k-1). Memoized, thread-safe.
BigCount stirling2(unsigned l, unsigned k);
/// S(l, k) = (1/k!) sum_i (-1)^{k-i} C(k, i) i^l.
BigCount stirling2_closed(unsigned l, unsigned k);

/// s(m, n+1) = s(m, n) + sum_{k=0}^{m} C(m+1, k) s(k, n), s(m, 0) = 2^m. Memoized.
BigCount s_recurrence(unsigned m, unsigned n);
/// sum_{j=2}^{m+2} (-1)^{m-j} S(m+1, j-1) (j!/2) j^n. Throws std::logic_error
/// if the signed sum comes out negative.
BigCount s_closed(unsigned m, unsigned n);

struct MarkedPartitionReport {
  BigCount lhs;  // (l - r) S(l, r)
  BigCount rhs;  // sum_{t=1}^{l-r} (-1)^{t+1} C(l, t+1) S(l-t, r)
  std::optional<std::uint64_t> direct;  // enumerated count, l <= 10 only

  bool holds() const { return lhs == rhs && (!direct || BigCount(static_cast<unsigned long>(*direct)) == lhs); }
};

/// Partitions of {1..l} into r blocks paired with an element that is not
/// the minimum of its block, counted by walking restricted growth strings.
std::uint64_t count_marked_partitions(unsigned l, unsigned r);
/// Throws std::invalid_argument unless r <= l.
MarkedPartitionReport marked_partition_check(unsigned l, unsigned r);

/// f(x, y) = e^{2x+2y} / (e^x + e^y - e^{x+y})^3 truncated at total degree `order`.
RationalSeries2 egf_series(int order);
/// m! n! [x^m y^n] f. Throws std::invalid_argument if m + n > order and
/// std::logic_error if the coefficient is not a non-negative integer.
BigCount egf_coefficient(const RationalSeries2& f, unsigned m, unsigned n);
BigCount egf_coefficient(unsigned m, unsigned n, int order);

/// Checks df/dy = (e^x + 1) f + (e^x - 1) df/dx through total degree order-1.
bool pde_check(const RationalSeries2& f);
bool pde_check(int order);

using CountFunction = std::function<BigCount(unsigned, unsigned)>;

/// table[m][n] for 0 <= m <= max_m, 0 <= n <= max_n.
CountTable count_table(unsigned max_m, unsigned max_n, const CountFunction& count);

/// CSV with a header "m\n,0,1,..." and one row per m.
void write_table_csv(std::ostream& os, const CountTable& table);
/// Throws std::runtime_error on malformed input.
CountTable read_table_csv(std::istream& is);

/// Persist or seed the recurrence memo. A loaded table is accepted only if it
/// has the 2^m base column and satisfies the recurrence throughout; otherwise
/// std::runtime_error is thrown and the memo is left untouched.
void save_recurrence_memo(const std::filesystem::path& path);
void load_recurrence_memo(const std::filesystem::path& path);

}  // namespace transfer
