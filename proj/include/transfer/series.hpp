#pragma once

// Truncated bivariate power series over exact rationals.

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace transfer {

/// Coefficients of x^i y^j for i + j <= order. Every operation truncates at
/// the smaller order of its operands.
class RationalSeries2 {
 public:
  explicit RationalSeries2(int order);

  static RationalSeries2 constant(int order, const mpq_class& c);
  /// e^{a x + b y}
  static RationalSeries2 exp_linear(int order, const mpq_class& a, const mpq_class& b);

  int order() const { return order_; }
  const mpq_class& coeff(int i, int j) const;
  mpq_class& coeff(int i, int j);

  RationalSeries2 operator+(const RationalSeries2& o) const;
  RationalSeries2 operator-(const RationalSeries2& o) const;
  RationalSeries2 operator*(const RationalSeries2& o) const;
  RationalSeries2 operator*(const mpq_class& s) const;

  /// 1/f by coefficient recursion; throws std::domain_error if f(0,0) = 0.
  RationalSeries2 reciprocal() const;
  RationalSeries2 pow(unsigned e) const;
  /// Derivatives lose one degree of precision.
  RationalSeries2 d_dx() const;
  RationalSeries2 d_dy() const;
  RationalSeries2 truncated(int order) const;

  friend bool operator==(const RationalSeries2& a, const RationalSeries2& b);

 private:
  static std::size_t offset(int i, int j);

  int order_;
  std::vector<mpq_class> c_;
};

}  // namespace transfer
